//! The local C1 curve: one polynomial piece per segment `[x_i, x_{i+1}]`
//! of the secondary grid, each matching chord values and chord slopes at
//! both ends.
//!
//! A piece is the chord line plus a cubic correction that vanishes at the
//! segment ends:
//!
//! ```text
//! s_i(x) = f_{i+1} (x - x_i)/L + f_i (x_{i+1} - x)/L + (x - x_i)(x - x_{i+1})(A x + B)
//! ```
//!
//! with `L = x_{i+1} - x_i = h_i + h_{i+1}`. The correction is stored
//! around the segment midpoint `c` as `A (x - c) + B_local` with
//! `B_local = A c + B`, which avoids cancellation when `|x|` is large
//! relative to the segment length. Since `f_{i+1} - f_i = h_i f'_i +
//! h_{i+1} f'_{i+1}`, the cubic coefficient equals
//! `A = (h_i - h_{i+1}) (f'_{i+1} - f'_i) / L^3`: the piece is quadratic
//! whenever `h_i = h_{i+1}`, in particular on uniform midpoint grids.

use serde::Serialize;

use crate::error::{CurveError, Result};
use crate::grid::{
    build_secondary_grid, is_degenerate, KnotPlacement, PrimaryGrid, SecondaryGrid,
};

/// Chord data prescribed at the two ends of segment `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordData {
    pub f_lo: f64,
    pub f_hi: f64,
    pub d_lo: f64,
    pub d_hi: f64,
}

fn check_segment_index(grid: &PrimaryGrid, i: usize) -> Result<()> {
    let hi = grid.len() - 1;
    if i < 2 || i > hi {
        return Err(CurveError::IndexOutOfRange { index: i, lo: 2, hi });
    }
    Ok(())
}

/// Chord value at secondary knot `x_k`, `k` in `2..=N`. Both segments
/// meeting at `x_k` read this single value.
fn knot_value(grid: &PrimaryGrid, placement: &KnotPlacement, k: usize) -> f64 {
    if k == 2 {
        let a = placement.alpha2();
        a * grid.value(1) + (1.0 - a) * grid.value(2)
    } else {
        let b = placement.beta(k - 1);
        b * grid.value(k) + (1.0 - b) * grid.value(k - 1)
    }
}

/// Chord values `f_i`, `f_{i+1}` (blends of neighbouring data) and chord
/// slopes `f'_i`, `f'_{i+1}` (divided differences) for segment `i`.
pub fn chord_data(grid: &PrimaryGrid, placement: &KnotPlacement, i: usize) -> Result<ChordData> {
    check_segment_index(grid, i)?;
    placement.check_len(grid)?;
    Ok(ChordData {
        f_lo: knot_value(grid, placement, i),
        f_hi: knot_value(grid, placement, i + 1),
        d_lo: grid.slope(i),
        d_hi: grid.slope(i + 1),
    })
}

/// One polynomial piece of the curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    /// Segment number `i` (2..=N-1); the piece spans `[x_i, x_{i+1}]`.
    pub index: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub d_lo: f64,
    pub d_hi: f64,
    /// Cubic coefficient of the correction term.
    #[serde(rename = "A")]
    pub a: f64,
    /// Constant of the correction term `A x + B` in global coordinates.
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(skip)]
    b_local: f64,
    #[serde(skip)]
    h_lo: f64,
    #[serde(skip)]
    h_hi: f64,
    #[serde(skip)]
    secant: f64,
}

impl Segment {
    /// `h_lo`, `h_hi` are the parts of the segment left and right of the
    /// primary knot it contains.
    fn new(index: usize, x_lo: f64, x_hi: f64, h_lo: f64, h_hi: f64, chord: ChordData) -> Self {
        let len = x_hi - x_lo;
        // f_hi - f_lo = h_lo d_lo + h_hi d_hi; the slope form keeps A free of
        // the cancellation between two chord values.
        let secant = (h_lo * chord.d_lo + h_hi * chord.d_hi) / (h_lo + h_hi);
        let a = (chord.d_lo + chord.d_hi - 2.0 * secant) / (len * len);
        let b_local = (chord.d_hi - chord.d_lo) / (2.0 * len);
        let mid = 0.5 * (x_lo + x_hi);
        Self {
            index,
            x_lo,
            x_hi,
            f_lo: chord.f_lo,
            f_hi: chord.f_hi,
            d_lo: chord.d_lo,
            d_hi: chord.d_hi,
            a,
            b: b_local - a * mid,
            b_local,
            h_lo,
            h_hi,
            secant,
        }
    }

    pub fn len(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn is_empty(&self) -> bool {
        self.x_hi <= self.x_lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.x_lo + self.x_hi)
    }

    /// Constant of the correction term around the segment midpoint.
    pub fn b_local(&self) -> f64 {
        self.b_local
    }

    /// `true` when the piece degenerates to a quadratic.
    pub fn is_quadratic(&self, tol: f64) -> bool {
        let len = self.len();
        self.a.abs() <= tol * self.d_lo.abs().max(self.d_hi.abs()).max(1.0) / (len * len)
    }

    /// Offsets of `x` from both ends; their half-sum is the offset from
    /// the midpoint.
    fn offsets(&self, x: f64) -> (f64, f64, f64) {
        let from_lo = x - self.x_lo;
        let from_hi = x - self.x_hi;
        (from_lo, from_hi, 0.5 * (from_lo + from_hi))
    }

    /// Value of the piece at `x`, without a domain check.
    pub fn value(&self, x: f64) -> f64 {
        let len = self.len();
        let (p, m, u) = self.offsets(x);
        chord(self.f_lo, self.f_hi, p, m, len) + p * m * (self.a * u + self.b_local)
    }

    /// `S(tau_i) - F_i` and `S'(tau_i)` at the primary knot `tau_i` inside
    /// the segment.
    ///
    /// Evaluated in offsets from `tau_i`: the segment spans
    /// `[tau_i - h_i, tau_i + h_{i+1}]`, so neither the data values nor the
    /// absolute abscissas enter, and the only cancellation left is
    /// `f'_{i+1} - f'_i`.
    pub fn at_primary_knot(&self) -> (f64, f64) {
        let (hl, hr) = (self.h_lo, self.h_hi);
        let len = hl + hr;
        let jump = self.d_hi - self.d_lo;
        let a = (hl - hr) * jump / (len * len * len);
        let corr = a * 0.5 * (hl - hr) + jump / (2.0 * len);
        let q = -hl * hr;
        let deviation = hl * hr * jump / len + q * corr;
        let slope = self.secant + (hl - hr) * corr + a * q;
        (deviation, slope)
    }

    /// First derivative of the piece at `x`.
    pub fn derivative(&self, x: f64) -> f64 {
        let (p, m, u) = self.offsets(x);
        self.secant + 2.0 * u * (self.a * u + self.b_local) + self.a * p * m
    }

    /// Second derivative of the piece at `x`.
    pub fn second_derivative(&self, x: f64) -> f64 {
        let (_, _, u) = self.offsets(x);
        6.0 * self.a * u + 2.0 * self.b_local
    }

    pub fn eval(&self, x: f64, order: u8) -> Result<f64> {
        match order {
            0 => Ok(self.value(x)),
            1 => Ok(self.derivative(x)),
            2 => Ok(self.second_derivative(x)),
            _ => Err(CurveError::UnsupportedOrder { order }),
        }
    }
}

/// Linear interpolant anchored at the nearer end: exact at both ends and
/// for constant data.
pub(crate) fn chord(f_lo: f64, f_hi: f64, from_lo: f64, from_hi: f64, len: f64) -> f64 {
    if from_lo <= -from_hi {
        f_lo + (f_hi - f_lo) * (from_lo / len)
    } else {
        f_hi + (f_lo - f_hi) * (-from_hi / len)
    }
}

fn segment_on(
    grid: &PrimaryGrid,
    placement: &KnotPlacement,
    secondary: &SecondaryGrid,
    i: usize,
) -> Result<Segment> {
    let (h_lo, h_hi) = secondary.half_lengths(i);
    let (x_lo, x_hi) = (secondary.x(i), secondary.x(i + 1));
    if is_degenerate(h_lo + h_hi, x_lo, x_hi) || x_hi <= x_lo {
        return Err(CurveError::DegenerateSegment { index: i });
    }
    Ok(Segment::new(i, x_lo, x_hi, h_lo, h_hi, chord_data(grid, placement, i)?))
}

/// Builds the piece for segment `i` (2..=N-1).
pub fn build_segment(grid: &PrimaryGrid, placement: &KnotPlacement, i: usize) -> Result<Segment> {
    check_segment_index(grid, i)?;
    let secondary = build_secondary_grid(grid, placement)?;
    segment_on(grid, placement, &secondary, i)
}

/// The assembled curve `S(x)` on `[x_2, x_N]`.
///
/// Immutable once built. `S` and `S'` are continuous across the secondary
/// knots; `S''` generally jumps there, and evaluation at an interior knot
/// uses the segment to its left.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCurve {
    grid: PrimaryGrid,
    placement: KnotPlacement,
    secondary: SecondaryGrid,
    segments: Vec<Segment>,
}

/// Builds the curve for `grid` with the given knot placement.
pub fn build_curve(grid: &PrimaryGrid, placement: &KnotPlacement) -> Result<PiecewiseCurve> {
    let secondary = build_secondary_grid(grid, placement)?;
    let segments = (2..grid.len())
        .map(|i| segment_on(grid, placement, &secondary, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(PiecewiseCurve {
        grid: grid.clone(),
        placement: placement.clone(),
        secondary,
        segments,
    })
}

impl PiecewiseCurve {
    pub fn grid(&self) -> &PrimaryGrid {
        &self.grid
    }

    pub fn placement(&self) -> &KnotPlacement {
        &self.placement
    }

    pub fn secondary(&self) -> &SecondaryGrid {
        &self.secondary
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Segment `i` (2..=N-1).
    pub fn segment(&self, i: usize) -> &Segment {
        &self.segments[i - 2]
    }

    /// `[x_2, x_N]`.
    pub fn domain(&self) -> (f64, f64) {
        self.secondary.domain()
    }

    /// Segment number `i` with `x_i <= x <= x_{i+1}`. An interior knot
    /// belongs to the segment on its left.
    pub fn locate_segment(&self, x: f64) -> Result<usize> {
        let (lo, hi) = self.domain();
        if !(x >= lo && x <= hi) {
            return Err(CurveError::OutOfDomain { x, lo, hi });
        }
        let knots = self.secondary.knots();
        let k = knots.partition_point(|&v| v < x);
        Ok(if k == 0 { 2 } else { k + 1 })
    }

    /// `S(x)`, `S'(x)` or `S''(x)` for `order` 0, 1 or 2.
    pub fn evaluate(&self, x: f64, order: u8) -> Result<f64> {
        let i = self.locate_segment(x)?;
        self.segment(i).eval(x, order)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.evaluate(x, 0)
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.evaluate(x, 1)
    }

    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        self.evaluate(x, 2)
    }

    /// Both one-sided second derivatives at secondary knot `x_i`. The outer
    /// ends of the domain report the single available side twice.
    pub fn second_derivative_jump(&self, i: usize) -> Result<(f64, f64)> {
        let n = self.grid.len();
        if i < 2 || i > n {
            return Err(CurveError::IndexOutOfRange { index: i, lo: 2, hi: n });
        }
        let x = self.secondary.x(i);
        let left = if i > 2 { self.segment(i - 1) } else { self.segment(2) };
        let right = if i < n { self.segment(i) } else { self.segment(n - 1) };
        Ok((left.second_derivative(x), right.second_derivative(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(tau: &[f64], f: &[f64], p: KnotPlacement) -> PiecewiseCurve {
        build_curve(&PrimaryGrid::new(tau.to_vec(), f.to_vec()).unwrap(), &p).unwrap()
    }

    #[test]
    fn chord_constant_data() {
        let g = PrimaryGrid::new(vec![0.0, 1.0, 2.0], vec![5.0; 3]).unwrap();
        let p = KnotPlacement::new(0.3, vec![0.8]).unwrap();
        let c = chord_data(&g, &p, 2).unwrap();
        assert_eq!((c.f_lo, c.f_hi, c.d_lo, c.d_hi), (5.0, 5.0, 0.0, 0.0));
    }

    #[test]
    fn chord_parabola_and_line() {
        let g = PrimaryGrid::new(vec![-1.0, 0.0, 1.0], vec![1.0, 0.0, 1.0]).unwrap();
        let c = chord_data(&g, &KnotPlacement::midpoints(3), 2).unwrap();
        assert_eq!((c.f_lo, c.f_hi, c.d_lo, c.d_hi), (0.5, 0.5, -1.0, 1.0));

        let g = PrimaryGrid::new(vec![0.0, 1.0, 3.0], vec![0.0, 1.0, 3.0]).unwrap();
        let c = chord_data(&g, &KnotPlacement::midpoints(3), 2).unwrap();
        assert_eq!((c.f_lo, c.f_hi, c.d_lo, c.d_hi), (0.5, 2.0, 1.0, 1.0));
    }

    #[test]
    fn chord_index_bounds() {
        let g = PrimaryGrid::new(vec![0.0, 1.0, 2.0], vec![0.0; 3]).unwrap();
        let p = KnotPlacement::midpoints(3);
        assert_eq!(chord_data(&g, &p, 1).unwrap_err().kind(), "IndexOutOfRange");
        assert_eq!(chord_data(&g, &p, 3).unwrap_err().kind(), "IndexOutOfRange");
    }

    #[test]
    fn parabola_segment_coefficients() {
        let g = PrimaryGrid::new(vec![-1.0, 0.0, 1.0], vec![1.0, 0.0, 1.0]).unwrap();
        let s = build_segment(&g, &KnotPlacement::midpoints(3), 2).unwrap();
        assert_eq!(s.a, 0.0);
        assert_eq!(s.b, 1.0);
    }

    #[test]
    fn parabola_evaluation() {
        let c = curve(&[-1.0, 0.0, 1.0], &[1.0, 0.0, 1.0], KnotPlacement::midpoints(3));
        assert_eq!(c.evaluate(0.0, 0).unwrap(), 0.25);
        assert_eq!(c.evaluate(0.0, 1).unwrap(), 0.0);
        assert_eq!(c.evaluate(0.0, 2).unwrap(), 2.0);
        assert_eq!(c.evaluate(0.0, 3).unwrap_err().kind(), "UnsupportedOrder");
    }

    #[test]
    fn constant_reproduction() {
        let c = curve(&[0.0, 1.0, 2.0], &[5.0; 3], KnotPlacement::new(0.2, vec![0.9]).unwrap());
        let (lo, hi) = c.domain();
        for k in 0..=20 {
            let x = lo + (hi - lo) * k as f64 / 20.0;
            assert!((c.value(x).unwrap() - 5.0).abs() <= 1e-15 * 5.0);
        }
    }

    #[test]
    fn linear_evaluation() {
        let tau = [0.0, 0.4, 1.3, 2.0];
        let f: Vec<f64> = tau.iter().map(|t| 0.7 * t).collect();
        let c = curve(&tau, &f, KnotPlacement::new(0.6, vec![0.3, 0.7]).unwrap());
        for s in c.segments() {
            assert!(s.a.abs() < 1e-14 && s.b.abs() < 1e-14);
        }
        assert!((c.value(1.0).unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn no_extrapolation() {
        let c = curve(&[0.0, 1.0, 2.0], &[0.0, 1.0, 4.0], KnotPlacement::midpoints(3));
        assert_eq!(c.domain(), (0.5, 1.5));
        assert_eq!(c.value(0.2).unwrap_err().kind(), "OutOfDomain");
        assert_eq!(c.value(1.6).unwrap_err().kind(), "OutOfDomain");
        assert!(c.value(f64::NAN).is_err());
    }

    #[test]
    fn locate_tie_breaks_left() {
        let c = curve(
            &[0.0, 1.0, 2.0, 3.0, 4.0],
            &[0.0, 1.0, 0.0, 1.0, 0.0],
            KnotPlacement::clamped(5),
        );
        let x = c.secondary().knots().to_vec();
        assert_eq!(x, vec![0.0, 1.5, 2.5, 4.0]);
        assert_eq!(c.locate_segment(x[0]).unwrap(), 2);
        assert_eq!(c.locate_segment(x[1]).unwrap(), 2);
        assert_eq!(c.locate_segment(x[1] + 1e-12).unwrap(), 3);
        assert_eq!(c.locate_segment(x[2]).unwrap(), 3);
        assert_eq!(c.locate_segment(x[3]).unwrap(), 4);
    }

    #[test]
    fn clamped_ends_hit_data() {
        let tau = [0.1, 0.35, 0.9, 1.4];
        let f = [0.3, -1.7, 2.2, 0.45];
        let c = curve(&tau, &f, KnotPlacement::clamped(4));
        assert_eq!(c.value(0.1).unwrap(), 0.3);
        assert_eq!(c.value(1.4).unwrap(), 0.45);
    }

    #[test]
    fn uniform_three_point_derivatives() {
        let h = 0.25;
        let f = [0.3, 1.1, 0.2];
        let c = curve(&[1.0 - h, 1.0, 1.0 + h], &f, KnotPlacement::midpoints(3));
        let d1 = (f[2] - f[0]) / (2.0 * h);
        let d2 = (f[2] - 2.0 * f[1] + f[0]) / (h * h);
        assert!((c.derivative(1.0).unwrap() - d1).abs() <= 1e-12 * d1.abs());
        assert!((c.second_derivative(1.0).unwrap() - d2).abs() <= 1e-12 * d2.abs());
    }

    #[test]
    fn second_derivative_sides() {
        let c = curve(
            &[0.0, 1.0, 2.5, 3.0],
            &[0.0, 1.0, -1.0, 2.0],
            KnotPlacement::new(0.5, vec![0.3, 0.5]).unwrap(),
        );
        let (l, r) = c.second_derivative_jump(3).unwrap();
        let x3 = c.secondary().x(3);
        assert_eq!(c.second_derivative(x3).unwrap(), l);
        assert_eq!(c.segment(3).second_derivative(x3), r);
        assert!(c.second_derivative_jump(1).is_err());
    }
}
