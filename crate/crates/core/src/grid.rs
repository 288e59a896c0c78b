//! Primary data grid, knot placement parameters and the secondary grid
//! derived from them.
//!
//! Every interval `(tau_{i-1}, tau_i)` of the primary grid receives one
//! secondary knot `x_i = alpha_i * tau_{i-1} + (1 - alpha_i) * tau_i`.
//! Consecutive parameters are coupled through `alpha_{i+1} = 1 - beta_i`, so
//! a placement only stores `alpha_2` and `beta_2..beta_{N-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{CurveError, Result};

/// Relative threshold below which a length is treated as zero.
pub const DEGENERATE_EPS: f64 = 1e-14;

pub(crate) fn is_degenerate(len: f64, a: f64, b: f64) -> bool {
    len <= DEGENERATE_EPS * a.abs().max(b.abs()).max(1.0)
}

/// Data abscissas `tau_1 < ... < tau_N` with their values `F_1..F_N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimaryGrid {
    tau: Vec<f64>,
    #[serde(rename = "F")]
    values: Vec<f64>,
}

impl PrimaryGrid {
    pub fn new(tau: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if tau.len() != values.len() {
            return Err(CurveError::LengthMismatch {
                tau: tau.len(),
                values: values.len(),
            });
        }
        for (k, (t, f)) in tau.iter().zip(&values).enumerate() {
            if !t.is_finite() || !f.is_finite() {
                return Err(CurveError::NonFinite { index: k + 1 });
            }
        }
        for k in 1..tau.len() {
            if tau[k] <= tau[k - 1] {
                return Err(CurveError::NotStrictlyIncreasing { index: k + 1 });
            }
            if is_degenerate(tau[k] - tau[k - 1], tau[k], tau[k - 1]) {
                return Err(CurveError::DegenerateSpacing { index: k + 1 });
            }
        }
        if tau.len() < 3 {
            return Err(CurveError::TooFewKnots { n: tau.len() });
        }
        Ok(Self { tau, values })
    }

    /// Number of knots `N`.
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn taus(&self) -> &[f64] {
        &self.tau
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `tau_i`, 1-based.
    pub fn tau(&self, i: usize) -> f64 {
        self.tau[i - 1]
    }

    /// `F_i`, 1-based.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    /// Spacing `H_i = tau_i - tau_{i-1}` for `i` in `2..=N`.
    pub fn spacing(&self, i: usize) -> f64 {
        self.tau[i - 1] - self.tau[i - 2]
    }

    /// Divided difference `(F_i - F_{i-1}) / H_i` for `i` in `2..=N`.
    pub fn slope(&self, i: usize) -> f64 {
        (self.value(i) - self.value(i - 1)) / self.spacing(i)
    }
}

/// Free parameters `alpha_2, beta_2..beta_{N-1}` positioning the secondary
/// knots.
///
/// `alpha_2` and the last beta may equal 1 (clamped ends); all interior
/// betas lie strictly inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPlacement")]
pub struct KnotPlacement {
    alpha2: f64,
    beta: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPlacement {
    alpha2: f64,
    beta: Vec<f64>,
}

impl TryFrom<RawPlacement> for KnotPlacement {
    type Error = CurveError;

    fn try_from(raw: RawPlacement) -> Result<Self> {
        KnotPlacement::new(raw.alpha2, raw.beta)
    }
}

fn check_param(name: String, value: f64, closed_right: bool) -> Result<()> {
    let ok = if closed_right {
        value > 0.0 && value <= 1.0
    } else {
        value > 0.0 && value < 1.0
    };
    if ok {
        Ok(())
    } else {
        Err(CurveError::InvalidPlacement {
            name,
            value,
            interval: if closed_right { "(0, 1]" } else { "(0, 1)" },
        })
    }
}

impl KnotPlacement {
    pub fn new(alpha2: f64, beta: Vec<f64>) -> Result<Self> {
        check_param("alpha_2".into(), alpha2, true)?;
        if beta.is_empty() {
            return Err(CurveError::PlacementLength {
                expected: 1,
                got: 0,
            });
        }
        let last = beta.len() - 1;
        for (k, &b) in beta.iter().enumerate() {
            check_param(format!("beta_{}", k + 2), b, k == last)?;
        }
        Ok(Self { alpha2, beta })
    }

    /// Every secondary knot at the midpoint of its interval.
    pub fn midpoints(n: usize) -> Self {
        Self {
            alpha2: 0.5,
            beta: vec![0.5; n.saturating_sub(2).max(1)],
        }
    }

    /// Clamped ends (`alpha_2 = beta_{N-1} = 1`) with interior knots at the
    /// interval midpoints. The curve then starts at `F_1` and ends at `F_N`.
    pub fn clamped(n: usize) -> Self {
        let mut beta = vec![0.5; n.saturating_sub(2).max(1)];
        *beta.last_mut().unwrap() = 1.0;
        Self { alpha2: 1.0, beta }
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    /// `beta_2..beta_{N-1}`.
    pub fn betas(&self) -> &[f64] {
        &self.beta
    }

    /// `alpha_i` for `i` in `2..=N-1`; `alpha_i = 1 - beta_{i-1}` for `i >= 3`.
    pub fn alpha(&self, i: usize) -> f64 {
        if i == 2 {
            self.alpha2
        } else {
            1.0 - self.beta[i - 3]
        }
    }

    /// `beta_i` for `i` in `2..=N-1`.
    pub fn beta(&self, i: usize) -> f64 {
        self.beta[i - 2]
    }

    pub(crate) fn check_len(&self, grid: &PrimaryGrid) -> Result<()> {
        let expected = grid.len() - 2;
        if self.beta.len() != expected {
            return Err(CurveError::PlacementLength {
                expected,
                got: self.beta.len(),
            });
        }
        Ok(())
    }
}

/// Secondary knots `x_2..x_N` together with the per-segment lengths
/// `h_i = alpha_i H_i` (left of `tau_i`) and `h_{i+1} = beta_i H_{i+1}`
/// (right of `tau_i`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondaryGrid {
    x: Vec<f64>,
    h_left: Vec<f64>,
    h_right: Vec<f64>,
}

impl SecondaryGrid {
    /// `x_2..x_N`.
    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    /// `x_i` for `i` in `2..=N`.
    pub fn x(&self, i: usize) -> f64 {
        self.x[i - 2]
    }

    /// `(h_i, h_{i+1})` for segment `i` in `2..=N-1`.
    pub fn half_lengths(&self, i: usize) -> (f64, f64) {
        (self.h_left[i - 2], self.h_right[i - 2])
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }
}

/// Places the secondary knots for `placement` on `grid`.
pub fn build_secondary_grid(grid: &PrimaryGrid, placement: &KnotPlacement) -> Result<SecondaryGrid> {
    placement.check_len(grid)?;
    let n = grid.len();
    let mut x = Vec::with_capacity(n - 1);
    for i in 2..n {
        let a = placement.alpha(i);
        x.push(a * grid.tau(i - 1) + (1.0 - a) * grid.tau(i));
    }
    let b = placement.beta(n - 1);
    x.push(b * grid.tau(n) + (1.0 - b) * grid.tau(n - 1));

    let mut h_left = Vec::with_capacity(n - 2);
    let mut h_right = Vec::with_capacity(n - 2);
    for i in 2..n {
        h_left.push(placement.alpha(i) * grid.spacing(i));
        h_right.push(placement.beta(i) * grid.spacing(i + 1));
        let (lo, hi) = (x[i - 2], x[i - 1]);
        if hi <= lo || is_degenerate(hi - lo, lo, hi) {
            return Err(CurveError::DegenerateSegment { index: i });
        }
    }
    Ok(SecondaryGrid { x, h_left, h_right })
}

/// Recovers the placement that puts the secondary knots at `x` (`x_2..x_N`).
pub fn placement_from_knots(grid: &PrimaryGrid, x: &[f64]) -> Result<KnotPlacement> {
    let n = grid.len();
    if x.len() != n - 1 {
        return Err(CurveError::KnotCount {
            expected: n - 1,
            got: x.len(),
        });
    }
    for (k, &xi) in x.iter().enumerate() {
        let i = k + 2;
        let (lo, hi) = (grid.tau(i - 1), grid.tau(i));
        let (ok, interval) = if i == 2 {
            (xi >= lo && xi < hi, format!("[{lo}, {hi})"))
        } else if i == n {
            (xi > lo && xi <= hi, format!("({lo}, {hi}]"))
        } else {
            (xi > lo && xi < hi, format!("({lo}, {hi})"))
        };
        if !ok {
            return Err(CurveError::KnotOutOfInterval {
                index: i,
                x: xi,
                interval,
            });
        }
    }

    let alpha2 = (grid.tau(2) - x[0]) / grid.spacing(2);
    let beta = (2..n)
        .map(|i| (x[i - 1] - grid.tau(i)) / grid.spacing(i + 1))
        .collect();
    // A knot within rounding distance of an interval end can still produce
    // a parameter of exactly 0 or 1; report it against the knot.
    KnotPlacement::new(alpha2, beta).map_err(|e| match e {
        CurveError::InvalidPlacement { name, .. } => {
            let index = if name == "alpha_2" {
                2
            } else {
                name.trim_start_matches("beta_").parse::<usize>().unwrap_or(1) + 1
            };
            CurveError::KnotOutOfInterval {
                index,
                x: x[index - 2],
                interval: format!("({}, {})", grid.tau(index - 1), grid.tau(index)),
            }
        }
        other => other,
    })
}
