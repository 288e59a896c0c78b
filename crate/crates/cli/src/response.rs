//! The curve payload shared by `fit`, `derivs` and `POST /api/curve`.
//!
//! Both the CLI and the service serialize through [`to_json`], so identical
//! inputs give byte-identical output. serde_json writes floats in their
//! shortest round-trip form.

use serde::{Deserialize, Serialize};
use varcurve_core::{build_curve, estimate_all, KnotPlacement, PiecewiseCurve, Segment};

use crate::dataset::DataSet;
use crate::error::ServiceError;
use crate::knots::KnotSpec;

pub const DEFAULT_SAMPLES: usize = 200;
pub const MAX_SAMPLES: usize = 100_000;

/// Segment coefficients. `A` and `B` describe the correction `A x + B` in
/// global coordinates; `B_local` is the same constant about the segment
/// midpoint and is what [`SegmentDto::eval`] uses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDto {
    pub index: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub d_lo: f64,
    pub d_hi: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "B_local")]
    pub b_local: f64,
}

impl From<&Segment> for SegmentDto {
    fn from(s: &Segment) -> Self {
        Self {
            index: s.index,
            x_lo: s.x_lo,
            x_hi: s.x_hi,
            f_lo: s.f_lo,
            f_hi: s.f_hi,
            d_lo: s.d_lo,
            d_hi: s.d_hi,
            a: s.a,
            b: s.b,
            b_local: s.b_local(),
        }
    }
}

impl SegmentDto {
    /// Value of the piece at `x` from the stored coefficients alone.
    pub fn eval(&self, x: f64) -> f64 {
        let len = self.x_hi - self.x_lo;
        let (p, m) = (x - self.x_lo, x - self.x_hi);
        let u = 0.5 * (p + m);
        let line = if p <= -m {
            self.f_lo + (self.f_hi - self.f_lo) * (p / len)
        } else {
            self.f_hi + (self.f_lo - self.f_hi) * (-m / len)
        };
        line + p * m * (self.a * u + self.b_local)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "dS")]
    pub ds: f64,
    #[serde(rename = "d2S")]
    pub d2s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotEstimate {
    pub i: usize,
    pub tau: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    pub f1_est: f64,
    pub f2_est: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementDto {
    pub alpha2: f64,
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveResponse {
    /// Secondary knots `x_2..x_N`.
    pub knots: Vec<f64>,
    pub placement: PlacementDto,
    pub segments: Vec<SegmentDto>,
    pub samples: Vec<Sample>,
    pub knot_estimates: Vec<KnotEstimate>,
}

impl CurveResponse {
    /// Segment containing `x`, ties going left as in the library.
    pub fn segment_at(&self, x: f64) -> Option<&SegmentDto> {
        let first = self.segments.first()?;
        let last = self.segments.last()?;
        if !(x >= first.x_lo && x <= last.x_hi) {
            return None;
        }
        let k = self.segments.partition_point(|s| s.x_hi < x);
        self.segments.get(k.min(self.segments.len() - 1))
    }
}

/// `n` equally spaced abscissas on `[lo, hi]` with both ends exact.
pub fn sample_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let last = n - 1;
    (0..n)
        .map(|k| {
            if k == last {
                hi
            } else {
                lo + (hi - lo) * (k as f64 / last as f64)
            }
        })
        .collect()
}

fn check_samples(n: usize) -> Result<(), ServiceError> {
    if (2..=MAX_SAMPLES).contains(&n) {
        Ok(())
    } else {
        Err(ServiceError::InvalidRequest(format!(
            "samples must lie in 2..={MAX_SAMPLES}, got {n}"
        )))
    }
}

fn estimates(curve: &PiecewiseCurve) -> Result<Vec<KnotEstimate>, ServiceError> {
    Ok(estimate_all(curve)?
        .into_iter()
        .map(|e| KnotEstimate {
            i: e.i,
            tau: e.tau,
            c1: e.c1,
            c2: e.c2,
            f1_est: e.f1_est,
            f2_est: e.f2_est,
        })
        .collect())
}

pub fn fit_curve(data: &DataSet, spec: &KnotSpec) -> Result<PiecewiseCurve, ServiceError> {
    let grid = data.grid()?;
    let placement = spec.resolve(&grid)?;
    Ok(build_curve(&grid, &placement)?)
}

fn placement_dto(p: &KnotPlacement) -> PlacementDto {
    PlacementDto {
        alpha2: p.alpha2(),
        beta: p.betas().to_vec(),
    }
}

/// Builds the curve, samples it and estimates derivatives at every
/// interior data point.
pub fn curve_response(
    data: &DataSet,
    spec: &KnotSpec,
    samples: usize,
) -> Result<CurveResponse, ServiceError> {
    check_samples(samples)?;
    let curve = fit_curve(data, spec)?;
    let (lo, hi) = curve.domain();
    let samples = sample_points(lo, hi, samples)
        .into_iter()
        .map(|x| {
            Ok(Sample {
                x,
                s: curve.value(x)?,
                ds: curve.derivative(x)?,
                d2s: curve.second_derivative(x)?,
            })
        })
        .collect::<Result<Vec<_>, ServiceError>>()?;
    Ok(CurveResponse {
        knots: curve.secondary().knots().to_vec(),
        placement: placement_dto(curve.placement()),
        segments: curve.segments().iter().map(SegmentDto::from).collect(),
        samples,
        knot_estimates: estimates(&curve)?,
    })
}

/// Derivative estimates only.
pub fn knot_estimates(data: &DataSet, spec: &KnotSpec) -> Result<Vec<KnotEstimate>, ServiceError> {
    estimates(&fit_curve(data, spec)?)
}

/// The single JSON serialization used by every output path.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("response types serialize infallibly");
    s.push('\n');
    s
}
