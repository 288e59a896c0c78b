//! Knot specifications: either a placement `{alpha2, beta}` or explicit
//! secondary knots `{x}`.

use std::path::Path;

use serde::Deserialize;
use varcurve_core::{placement_from_knots, KnotPlacement, PrimaryGrid};

use crate::error::ServiceError;

#[derive(Debug, Clone, PartialEq, Default)]
pub enum KnotSpec {
    Placement { alpha2: f64, beta: Vec<f64> },
    Knots { x: Vec<f64> },
    /// Clamped ends, interior knots at the midpoints.
    #[default]
    Default,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    x: Option<Vec<f64>>,
    alpha2: Option<f64>,
    beta: Option<Vec<f64>>,
}

impl KnotSpec {
    pub fn from_json(bytes: &[u8]) -> Result<Self, ServiceError> {
        let raw: RawSpec =
            serde_json::from_slice(bytes).map_err(|e| ServiceError::Parse(e.to_string()))?;
        match raw {
            RawSpec { x: Some(x), alpha2: None, beta: None } => Ok(KnotSpec::Knots { x }),
            RawSpec { x: None, alpha2: Some(alpha2), beta: Some(beta) } => {
                Ok(KnotSpec::Placement { alpha2, beta })
            }
            _ => Err(ServiceError::Parse(
                "knot spec must be either {\"x\": [...]} or {\"alpha2\": a, \"beta\": [...]}".into(),
            )),
        }
    }

    pub fn read(path: &Path) -> Result<Self, ServiceError> {
        let bytes = std::fs::read(path).map_err(|source| ServiceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&bytes)
    }

    pub fn resolve(&self, grid: &PrimaryGrid) -> Result<KnotPlacement, ServiceError> {
        let placement = match self {
            KnotSpec::Placement { alpha2, beta } => KnotPlacement::new(*alpha2, beta.clone())?,
            KnotSpec::Knots { x } => placement_from_knots(grid, x)?,
            KnotSpec::Default => KnotPlacement::clamped(grid.len()),
        };
        Ok(placement)
    }
}
