use thiserror::Error;

/// Errors raised while validating inputs, building a curve or estimating
/// nodal derivatives.
///
/// Indices are 1-based and follow the knot numbering used throughout the
/// crate: primary knots are `1..=N`, secondary knots `2..=N`, segments and
/// interior knots `2..=N-1`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("at least 3 primary knots are required, got {n}")]
    TooFewKnots { n: usize },

    #[error("tau has {tau} entries but F has {values}")]
    LengthMismatch { tau: usize, values: usize },

    #[error("tau is not strictly increasing at knot {index}")]
    NotStrictlyIncreasing { index: usize },

    #[error("non-finite value at knot {index}")]
    NonFinite { index: usize },

    #[error("knot spacing H_{index} is degenerate")]
    DegenerateSpacing { index: usize },

    #[error("placement parameter {name} = {value} is outside {interval}")]
    InvalidPlacement {
        name: String,
        value: f64,
        interval: &'static str,
    },

    #[error("placement has {got} beta values, grid needs {expected}")]
    PlacementLength { expected: usize, got: usize },

    #[error("secondary knot x_{index} = {x} is outside {interval}")]
    KnotOutOfInterval {
        index: usize,
        x: f64,
        interval: String,
    },

    #[error("expected {expected} secondary knots, got {got}")]
    KnotCount { expected: usize, got: usize },

    #[error("segment {index} has degenerate length")]
    DegenerateSegment { index: usize },

    #[error("x = {x} is outside the curve domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("derivative order {order} is not supported (0, 1 or 2)")]
    UnsupportedOrder { order: u8 },

    #[error("placement parameters at knot {index} are too small")]
    DegeneratePlacement { index: usize },

    #[error("error constant C1 = {c1} at knot {index} is too small to divide by")]
    UnstableC1 { index: usize, c1: f64 },

    #[error("index {index} is outside {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
}

impl CurveError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            CurveError::TooFewKnots { .. } => "TooFewKnots",
            CurveError::LengthMismatch { .. } => "LengthMismatch",
            CurveError::NotStrictlyIncreasing { .. } => "NotStrictlyIncreasing",
            CurveError::NonFinite { .. } => "NonFinite",
            CurveError::DegenerateSpacing { .. } => "DegenerateSpacing",
            CurveError::InvalidPlacement { .. } => "InvalidPlacement",
            CurveError::PlacementLength { .. } => "PlacementLength",
            CurveError::KnotOutOfInterval { .. } => "KnotOutOfInterval",
            CurveError::KnotCount { .. } => "KnotCount",
            CurveError::DegenerateSegment { .. } => "DegenerateSegment",
            CurveError::OutOfDomain { .. } => "OutOfDomain",
            CurveError::UnsupportedOrder { .. } => "UnsupportedOrder",
            CurveError::DegeneratePlacement { .. } => "DegeneratePlacement",
            CurveError::UnstableC1 { .. } => "UnstableC1",
            CurveError::IndexOutOfRange { .. } => "IndexOutOfRange",
        }
    }

    /// Knot or segment index the error refers to, if any.
    pub fn index(&self) -> Option<usize> {
        match *self {
            CurveError::NotStrictlyIncreasing { index }
            | CurveError::NonFinite { index }
            | CurveError::DegenerateSpacing { index }
            | CurveError::KnotOutOfInterval { index, .. }
            | CurveError::DegenerateSegment { index }
            | CurveError::DegeneratePlacement { index }
            | CurveError::UnstableC1 { index, .. }
            | CurveError::IndexOutOfRange { index, .. } => Some(index),
            _ => None,
        }
    }
}

pub type Result<T, E = CurveError> = std::result::Result<T, E>;
