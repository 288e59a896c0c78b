//! Nodal derivative estimation at interior primary knots.
//!
//! Near an interior knot `tau_i` the curve deviates from the data by
//! `S(tau_i) - F(tau_i) ≈ C1 F''(tau_i)` and its slope by
//! `S'(tau_i) - F'(tau_i) ≈ C2 F''(tau_i)`, where `C1` and `C2` depend only
//! on the local spacings `H_i`, `H_{i+1}` and the segment half-lengths
//! `h_i = alpha_i H_i`, `h_{i+1} = beta_i H_{i+1}`. Inverting both relations
//! gives `F''(tau_i)` to first order and `F'(tau_i)` to second order in
//! `max(h_i, h_{i+1})`; on a uniform grid with midpoint knots both are
//! second order.

use serde::Serialize;

use crate::curve::PiecewiseCurve;
use crate::error::{CurveError, Result};
use crate::grid::{KnotPlacement, PrimaryGrid, DEGENERATE_EPS};

/// Local geometry around an interior knot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnotGeometry {
    /// `H_i`, `H_{i+1}`.
    pub spacing_left: f64,
    pub spacing_right: f64,
    /// `h_i`, `h_{i+1}`.
    pub half_left: f64,
    pub half_right: f64,
}

impl KnotGeometry {
    pub fn new(grid: &PrimaryGrid, placement: &KnotPlacement, i: usize) -> Result<Self> {
        check_interior(grid, i)?;
        placement.check_len(grid)?;
        let (alpha, beta) = (placement.alpha(i), placement.beta(i));
        if alpha < DEGENERATE_EPS || beta < DEGENERATE_EPS {
            return Err(CurveError::DegeneratePlacement { index: i });
        }
        let spacing_left = grid.spacing(i);
        let spacing_right = grid.spacing(i + 1);
        Ok(Self {
            spacing_left,
            spacing_right,
            half_left: alpha * spacing_left,
            half_right: beta * spacing_right,
        })
    }

    /// `max(h_i, h_{i+1})`.
    pub fn h_bar(&self) -> f64 {
        self.half_left.max(self.half_right)
    }

    /// Leading coefficient of `S(tau_i) - F(tau_i)` in units of `F''`.
    ///
    /// With `h_i / alpha_i = H_i` and `h_{i+1} / beta_i = H_{i+1}` the three
    /// bracket terms collapse to
    /// `h_i^2 h_{i+1}^2 (H_i + H_{i+1}) / (h_i + h_{i+1})^3`, which is
    /// evaluated directly and is positive for every admissible placement.
    pub fn c1(&self) -> f64 {
        let (hl, hr) = (self.half_left, self.half_right);
        let s = hl + hr;
        let p = hl * hr / s;
        p * p * (self.spacing_left + self.spacing_right) / s
    }

    /// Leading coefficient of `S'(tau_i) - F'(tau_i)` in units of `F''`.
    pub fn c2(&self) -> f64 {
        let (hl, hr) = (self.half_left, self.half_right);
        let (gl, gr) = (self.spacing_left, self.spacing_right);
        let s = hl + hr;
        let p = hr * hr + hl * hl - 4.0 * hl * hr;
        let sq = hr * gr - hl * gl;
        sq / (2.0 * s) + p * (gr - gl) / (4.0 * s * s) - p * sq / (2.0 * s * s * s)
            - (hr - hl) * (gr + gl) / (4.0 * s)
    }
}

fn check_interior(grid: &PrimaryGrid, i: usize) -> Result<()> {
    let hi = grid.len() - 1;
    if i < 2 || i > hi {
        return Err(CurveError::IndexOutOfRange { index: i, lo: 2, hi });
    }
    Ok(())
}

pub fn compute_c1(grid: &PrimaryGrid, placement: &KnotPlacement, i: usize) -> Result<f64> {
    Ok(KnotGeometry::new(grid, placement, i)?.c1())
}

pub fn compute_c2(grid: &PrimaryGrid, placement: &KnotPlacement, i: usize) -> Result<f64> {
    Ok(KnotGeometry::new(grid, placement, i)?.c2())
}

/// Derivative estimates at interior knot `tau_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotDerivativeEstimate {
    pub i: usize,
    pub tau: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    /// Estimate of `F''(tau_i)`.
    pub f2_est: f64,
    /// Estimate of `F'(tau_i)`.
    pub f1_est: f64,
    /// `S(tau_i) - F_i`.
    pub delta1: f64,
    /// `S'(tau_i)` before correction.
    pub delta2_raw: f64,
    /// `max(h_i, h_{i+1})`.
    pub h_bar: f64,
}

/// Estimates `F'(tau_i)` and `F''(tau_i)` from the curve.
pub fn estimate_at_knot(curve: &PiecewiseCurve, i: usize) -> Result<KnotDerivativeEstimate> {
    let grid = curve.grid();
    let geom = KnotGeometry::new(grid, curve.placement(), i)?;
    let c1 = geom.c1();
    let c2 = geom.c2();
    let h_bar = geom.h_bar();
    if c1.is_nan() || c1.abs() < DEGENERATE_EPS * h_bar * h_bar {
        return Err(CurveError::UnstableC1 { index: i, c1 });
    }
    // tau_i lies strictly inside segment i.
    let tau = grid.tau(i);
    let (delta1, delta2_raw) = curve.segment(i).at_primary_knot();
    let f2_est = delta1 / c1;
    Ok(KnotDerivativeEstimate {
        i,
        tau,
        c1,
        c2,
        f2_est,
        f1_est: delta2_raw - c2 * f2_est,
        delta1,
        delta2_raw,
        h_bar,
    })
}

/// Estimates at every interior knot `tau_2..tau_{N-1}`.
pub fn estimate_all(curve: &PiecewiseCurve) -> Result<Vec<KnotDerivativeEstimate>> {
    (2..curve.grid().len())
        .map(|i| estimate_at_knot(curve, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;

    fn geom(gl: f64, gr: f64, a: f64, b: f64) -> KnotGeometry {
        KnotGeometry {
            spacing_left: gl,
            spacing_right: gr,
            half_left: a * gl,
            half_right: b * gr,
        }
    }

    #[test]
    fn uniform_constants() {
        for &h in &[0.5, 0.01, 3.0] {
            let g = geom(2.0 * h, 2.0 * h, 0.5, 0.5);
            assert!((g.c1() - h * h / 2.0).abs() <= 1e-15 * h * h);
            assert_eq!(g.c2(), 0.0);
        }
    }

    #[test]
    fn equal_halves_unequal_spacings() {
        // alpha H_i = beta H_{i+1} with H_{i+1} = 2 H_i.
        let g = geom(1.0, 2.0, 0.6, 0.3);
        let (hl, hr) = (g.half_left, g.half_right);
        assert!((hl - hr).abs() < 1e-15);
        let expected = hl * hr * (1.0 + 2.0) / (4.0 * (hl + hr));
        assert!((g.c1() - expected).abs() <= 1e-14 * expected);
    }

    #[test]
    fn c1_closed_form() {
        for &(gl, gr, a, b) in &[(0.3, 0.7, 0.35, 0.8), (1.0, 3.0, 0.5, 0.5), (2.0, 0.1, 0.9, 0.05)] {
            let g = geom(gl, gr, a, b);
            let (hl, hr) = (g.half_left, g.half_right);
            let closed = hl * hl * hr * hr * (gl + gr) / (hl + hr).powi(3);
            assert!((g.c1() - closed).abs() <= 1e-14 * closed);
            assert!(g.c1() > 0.0);
        }
    }

    #[test]
    fn scaling() {
        let base = geom(0.3, 0.7, 0.35, 0.8);
        let s = 7.5;
        let scaled = geom(0.3 * s, 0.7 * s, 0.35, 0.8);
        assert!((scaled.c1() - s * s * base.c1()).abs() <= 1e-13 * scaled.c1().abs());
        assert!((scaled.c2() - s * base.c2()).abs() <= 1e-13 * scaled.c2().abs());
    }

    #[test]
    fn ratio_three_c2_nonzero() {
        let h = 1.0 / 32.0;
        let g = geom(h, 3.0 * h, 0.5, 0.5);
        // h_i = H/2, h_{i+1} = 3H/2: C2 = 0.5625 H here, so |C2| / h_bar = 0.375.
        assert!((g.c2() - 0.5625 * h).abs() < 1e-15);
        assert!(g.c2().abs() / g.h_bar() < 1.0);
    }

    #[test]
    fn boundary_knots_rejected() {
        let grid = PrimaryGrid::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 4.0, 9.0]).unwrap();
        let curve = build_curve(&grid, &KnotPlacement::clamped(4)).unwrap();
        assert_eq!(estimate_at_knot(&curve, 1).unwrap_err().kind(), "IndexOutOfRange");
        assert_eq!(estimate_at_knot(&curve, 4).unwrap_err().kind(), "IndexOutOfRange");
        assert_eq!(estimate_all(&curve).unwrap().len(), 2);
    }

    #[test]
    fn parabola_exact() {
        let grid = PrimaryGrid::new(vec![-1.0, 0.0, 1.0], vec![1.0, 0.0, 1.0]).unwrap();
        let curve = build_curve(&grid, &KnotPlacement::midpoints(3)).unwrap();
        let e = estimate_at_knot(&curve, 2).unwrap();
        assert_eq!(e.delta1, 0.25);
        assert_eq!(e.c1, 0.125);
        assert_eq!(e.f2_est, 2.0);
        assert_eq!(e.f1_est, 0.0);
    }
}
