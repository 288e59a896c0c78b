use serde::Serialize;
use thiserror::Error;
use varcurve_core::convergence::LabError;
use varcurve_core::CurveError;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error("{0}")]
    InvalidRequest(String),
    #[error("{0}")]
    Usage(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown preset `{preset}` for fixture `{fixture}`")]
    UnknownPreset { fixture: String, preset: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// JSON error payload shared by the CLI and the HTTP service.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorBody {
    pub error: &'static str,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

impl ServiceError {
    pub fn kind(&self) -> &'static str {
        match self {
            ServiceError::Parse(_) => "ParseError",
            ServiceError::Curve(e) => e.kind(),
            ServiceError::Lab(LabError::Curve(e)) => e.kind(),
            ServiceError::Lab(LabError::UnknownFunction(_)) => "UnknownFunction",
            ServiceError::Lab(LabError::NonPositiveError { .. }) => "NonPositiveError",
            ServiceError::Lab(_) => "InvalidExperiment",
            ServiceError::InvalidRequest(_) => "InvalidRequest",
            ServiceError::Usage(_) => "UsageError",
            ServiceError::UnknownFixture(_) => "UnknownFixture",
            ServiceError::UnknownPreset { .. } => "UnknownPreset",
            ServiceError::Io { .. } => "IoError",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            ServiceError::Curve(e) | ServiceError::Lab(LabError::Curve(e)) => e.index(),
            _ => None,
        }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            error: self.kind(),
            detail: self.to_string(),
            index: self.index(),
        }
    }

    /// 0 success, 1 input or validation error, 2 usage error.
    pub fn exit_code(&self) -> i32 {
        match self {
            ServiceError::Lab(LabError::UnknownFunction(_))
            | ServiceError::Usage(_)
            | ServiceError::UnknownFixture(_)
            | ServiceError::UnknownPreset { .. } => 2,
            _ => 1,
        }
    }
}
