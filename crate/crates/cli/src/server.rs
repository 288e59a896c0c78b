//! Stateless JSON service.
//!
//! ```text
//! POST /api/curve            {tau, F, knots? | placement?, samples?} -> CurveResponse
//! GET  /api/fixtures         -> [{name, n, presets}]
//! GET  /api/fixtures/{name}  -> {name, tau, F, presets}
//! GET  /api/health           -> {"status":"ok"}
//! ```
//!
//! Validation failures are `400 {error, detail, index?}`; unknown fixtures
//! and routes are 404.

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::body::Bytes;
use axum::extract::Path;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use tower_http::services::ServeDir;

use crate::dataset::DataSet;
use crate::error::{ErrorBody, ServiceError};
use crate::fixtures;
use crate::knots::KnotSpec;
use crate::response::{curve_response, to_json, PlacementDto, DEFAULT_SAMPLES};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRequest {
    pub tau: Vec<f64>,
    #[serde(rename = "F")]
    pub values: Vec<f64>,
    #[serde(default)]
    pub knots: Option<Vec<f64>>,
    #[serde(default)]
    pub placement: Option<PlacementDto>,
    #[serde(default)]
    pub samples: Option<usize>,
}

impl CurveRequest {
    pub fn spec(&self) -> Result<KnotSpec, ServiceError> {
        match (&self.knots, &self.placement) {
            (Some(_), Some(_)) => Err(ServiceError::InvalidRequest(
                "give either `knots` or `placement`, not both".into(),
            )),
            (Some(x), None) => Ok(KnotSpec::Knots { x: x.clone() }),
            (None, Some(p)) => Ok(KnotSpec::Placement {
                alpha2: p.alpha2,
                beta: p.beta.clone(),
            }),
            (None, None) => Ok(KnotSpec::Default),
        }
    }
}

fn json(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(status: StatusCode, err: &ServiceError) -> Response {
    json(status, to_json(&err.body()))
}

/// Handles a raw `POST /api/curve` body.
pub fn handle_curve(body: &[u8]) -> Result<String, ServiceError> {
    let req: CurveRequest =
        serde_json::from_slice(body).map_err(|e| ServiceError::Parse(e.to_string()))?;
    let spec = req.spec()?;
    let data = DataSet {
        name: None,
        tau: req.tau,
        values: req.values,
    };
    let resp = curve_response(&data, &spec, req.samples.unwrap_or(DEFAULT_SAMPLES))?;
    Ok(to_json(&resp))
}

async fn post_curve(body: Bytes) -> Response {
    match handle_curve(&body) {
        Ok(s) => json(StatusCode::OK, s),
        Err(e) => error_response(StatusCode::BAD_REQUEST, &e),
    }
}

async fn list_fixtures() -> Response {
    let list: Vec<_> = fixtures::all().iter().map(|f| f.summary()).collect();
    json(StatusCode::OK, to_json(&list))
}

async fn get_fixture(Path(name): Path<String>) -> Response {
    match fixtures::find(&name) {
        Ok(f) => json(StatusCode::OK, to_json(&f)),
        Err(e) => error_response(StatusCode::NOT_FOUND, &e),
    }
}

async fn health() -> Response {
    json(StatusCode::OK, "{\"status\":\"ok\"}\n".to_string())
}

async fn api_not_found() -> Response {
    let body = ErrorBody {
        error: "NotFound",
        detail: "no such endpoint".into(),
        index: None,
    };
    json(StatusCode::NOT_FOUND, to_json(&body))
}

/// The API router, optionally serving a static UI bundle at `/`.
pub fn router(static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/curve", post(post_curve))
        .route("/fixtures", get(list_fixtures))
        .route("/fixtures/{name}", get(get_fixture))
        .route("/health", get(health))
        .fallback(api_not_found);
    let app = Router::new().nest("/api", api);
    match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    }
}

pub async fn serve(listener: tokio::net::TcpListener, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    axum::serve(listener, router(static_dir)).await
}

pub async fn bind(addr: SocketAddr) -> std::io::Result<tokio::net::TcpListener> {
    tokio::net::TcpListener::bind(addr).await
}
