//! Command-line tool and JSON service around `varcurve-core`: dataset
//! parsing, knot specifications, the shared curve response, and the HTTP
//! router.

pub mod commands;
pub mod dataset;
pub mod error;
pub mod fixtures;
pub mod knots;
pub mod response;
pub mod server;

pub use dataset::{parse_dataset, DataFormat, DataSet};
pub use error::{ErrorBody, ServiceError};
pub use knots::KnotSpec;
pub use response::{curve_response, to_json, CurveResponse};
