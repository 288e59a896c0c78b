//! Convergence harness: errors of the curve and of the nodal derivative
//! estimates at the middle knot of a three-knot grid
//! `{c - H, c, c + r H}` with `H = 2^-j`, and the estimated order of
//! convergence between successive refinement levels.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::curve::build_curve;
use crate::error::CurveError;
use crate::estimators::estimate_at_knot;
use crate::grid::{KnotPlacement, PrimaryGrid};

type Scalar = fn(f64) -> f64;

/// A smooth function with analytic first and second derivatives.
#[derive(Clone)]
pub struct TestFunction {
    name: &'static str,
    value: Scalar,
    d1: Scalar,
    d2: Scalar,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction").field("name", &self.name).finish()
    }
}

const SPOT_CHECK_POINTS: [f64; 5] = [-0.9, -0.2, 0.35, 0.5, 1.3];
const SPOT_CHECK_TOL: f64 = 1e-6;

impl TestFunction {
    /// Registers a function, spot-checking the supplied derivatives against
    /// central differences.
    pub fn new(name: &'static str, value: Scalar, d1: Scalar, d2: Scalar) -> Result<Self, LabError> {
        let step = 1e-4;
        for &x in &SPOT_CHECK_POINTS {
            let fd1 = (value(x + step) - value(x - step)) / (2.0 * step);
            let fd2 = (value(x + step) - 2.0 * value(x) + value(x - step)) / (step * step);
            let ok1 = (fd1 - d1(x)).abs() <= SPOT_CHECK_TOL * d1(x).abs().max(1.0);
            let ok2 = (fd2 - d2(x)).abs() <= SPOT_CHECK_TOL * d2(x).abs().max(1.0);
            if !(ok1 && ok2) {
                return Err(LabError::InconsistentDerivatives { name, x });
            }
        }
        Ok(Self { name, value, d1, d2 })
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn d1(&self, x: f64) -> f64 {
        (self.d1)(x)
    }

    pub fn d2(&self, x: f64) -> f64 {
        (self.d2)(x)
    }

    /// `x^4 + sin x`.
    pub fn quartic_sine() -> Self {
        Self::new(
            "quartic-sine",
            |x| x.powi(4) + x.sin(),
            |x| 4.0 * x.powi(3) + x.cos(),
            |x| 12.0 * x * x - x.sin(),
        )
        .expect("analytic derivatives")
    }

    /// `3x^2 - 2x + 1`; the nodal estimates are exact for it.
    pub fn quadratic() -> Self {
        Self::new(
            "quadratic",
            |x| 3.0 * x * x - 2.0 * x + 1.0,
            |x| 6.0 * x - 2.0,
            |_| 6.0,
        )
        .expect("analytic derivatives")
    }

    /// `exp(x)`.
    pub fn exponential() -> Self {
        Self::new("exp", f64::exp, f64::exp, f64::exp).expect("analytic derivatives")
    }
}

/// All built-in test functions.
pub fn registry() -> Vec<TestFunction> {
    vec![
        TestFunction::quartic_sine(),
        TestFunction::quadratic(),
        TestFunction::exponential(),
    ]
}

pub fn lookup(name: &str) -> Result<TestFunction, LabError> {
    registry()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| LabError::UnknownFunction(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("unknown test function `{0}`")]
    UnknownFunction(String),
    #[error("derivatives of `{name}` disagree with finite differences at x = {x}")]
    InconsistentDerivatives { name: &'static str, x: f64 },
    #[error("EOC is undefined for non-positive errors ({coarse}, {fine})")]
    NonPositiveError { coarse: f64, fine: f64 },
    #[error("ratio must be positive and finite, got {0}")]
    InvalidRatio(f64),
    #[error("uniform mode requires ratio 1, got {0}")]
    UniformRatio(f64),
    #[error("empty refinement range")]
    EmptyRange,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// `log2(err_coarse / err_fine)`.
pub fn eoc(err_coarse: f64, err_fine: f64) -> Result<f64, LabError> {
    if !(err_coarse > 0.0 && err_fine > 0.0) {
        return Err(LabError::NonPositiveError {
            coarse: err_coarse,
            fine: err_fine,
        });
    }
    Ok((err_coarse / err_fine).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    Uniform,
    Ratio,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: GridMode,
    /// `H_{i+1} / H_i`.
    pub ratio: f64,
    pub j_min: u32,
    pub j_max: u32,
    pub center: f64,
}

impl ExperimentConfig {
    pub fn uniform() -> Self {
        Self {
            mode: GridMode::Uniform,
            ratio: 1.0,
            j_min: 5,
            j_max: 9,
            center: 0.5,
        }
    }

    pub fn ratio(ratio: f64) -> Self {
        Self {
            mode: GridMode::Ratio,
            ratio,
            ..Self::uniform()
        }
    }
}

/// One refinement level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub j: u32,
    /// `H_i = 2^-j`.
    pub h: f64,
    pub h_bar: f64,
    /// `|S(tau_i) - F(tau_i)|`.
    pub err1: f64,
    /// `|f1_est - F'(tau_i)|`.
    pub err2: f64,
    /// `|f2_est - F''(tau_i)|`.
    pub err3: f64,
    /// `|S'(tau_i) - F'(tau_i)|` without the C2 correction.
    pub err2_raw: f64,
    /// `|S''(tau_i) - F''(tau_i)|`.
    pub err3_raw: f64,
    pub eoc1: Option<f64>,
    pub eoc2: Option<f64>,
    pub eoc3: Option<f64>,
}

fn level(f: &TestFunction, cfg: &ExperimentConfig, j: u32) -> Result<ConvergenceRow, LabError> {
    let h = 2f64.powi(-(j as i32));
    let c = cfg.center;
    let tau = vec![c - h, c, c + cfg.ratio * h];
    let values = tau.iter().map(|&t| f.value(t)).collect();
    let grid = PrimaryGrid::new(tau, values)?;
    let curve = build_curve(&grid, &KnotPlacement::midpoints(3))?;
    let est = estimate_at_knot(&curve, 2)?;
    let (f1, f2) = (f.d1(c), f.d2(c));
    Ok(ConvergenceRow {
        j,
        h,
        h_bar: est.h_bar,
        err1: (est.delta1 + grid.value(2) - f.value(c)).abs(),
        err2: (est.f1_est - f1).abs(),
        err3: (est.f2_est - f2).abs(),
        err2_raw: (est.delta2_raw - f1).abs(),
        err3_raw: (curve.second_derivative(c)? - f2).abs(),
        eoc1: None,
        eoc2: None,
        eoc3: None,
    })
}

fn eoc_opt(coarse: f64, fine: f64) -> Option<f64> {
    eoc(coarse, fine).ok()
}

/// Runs the refinement study for `j` in `cfg.j_min..=cfg.j_max`.
pub fn run_experiment(f: &TestFunction, cfg: &ExperimentConfig) -> Result<Vec<ConvergenceRow>, LabError> {
    if !(cfg.ratio > 0.0 && cfg.ratio.is_finite()) {
        return Err(LabError::InvalidRatio(cfg.ratio));
    }
    if cfg.mode == GridMode::Uniform && cfg.ratio != 1.0 {
        return Err(LabError::UniformRatio(cfg.ratio));
    }
    if cfg.j_min > cfg.j_max {
        return Err(LabError::EmptyRange);
    }
    let mut rows = (cfg.j_min..=cfg.j_max)
        .map(|j| level(f, cfg, j))
        .collect::<Result<Vec<_>, _>>()?;
    for k in 1..rows.len() {
        let (prev, cur) = (rows[k - 1].clone(), &mut rows[k]);
        cur.eoc1 = eoc_opt(prev.err1, cur.err1);
        cur.eoc2 = eoc_opt(prev.err2, cur.err2);
        cur.eoc3 = eoc_opt(prev.err3, cur.err3);
    }
    Ok(rows)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |e| format!("{e:.4}"))
}

/// Human-readable table in the column order `H, err1, EOC, err2, EOC,
/// err3, EOC`, errors with 5 significant digits.
pub fn format_table(rows: &[ConvergenceRow]) -> String {
    let mut out = format!(
        "{:<10} {:>11} {:>7} {:>11} {:>7} {:>11} {:>7}\n",
        "H_i", "err1", "EOC", "err2", "EOC", "err3", "EOC"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<10} {:>11} {:>7} {:>11} {:>7} {:>11} {:>7}\n",
            format!("{:.3e}", r.h),
            format!("{:.4e}", r.err1),
            opt(r.eoc1),
            format!("{:.4e}", r.err2),
            opt(r.eoc2),
            format!("{:.4e}", r.err3),
            opt(r.eoc3),
        ));
    }
    out
}
