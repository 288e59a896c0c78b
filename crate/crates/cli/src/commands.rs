//! Subcommand bodies. Each returns the text to emit so that the binary only
//! deals with argument parsing, output destinations and exit codes.

use std::path::{Path, PathBuf};

use serde::Serialize;
use varcurve_core::convergence::{self, ExperimentConfig, GridMode};

use crate::dataset::{read_dataset, DataSet};
use crate::error::ServiceError;
use crate::fixtures;
use crate::knots::KnotSpec;
use crate::response::{curve_response, knot_estimates, to_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

/// Where the data and knots come from.
#[derive(Debug, Clone, Default)]
pub struct Input {
    pub data: Option<PathBuf>,
    pub fixture: Option<String>,
    pub knots: Option<PathBuf>,
    pub placement: Option<PathBuf>,
    pub preset: Option<String>,
}

impl Input {
    pub fn load(&self) -> Result<(DataSet, KnotSpec), ServiceError> {
        let usage = |m: &str| ServiceError::Usage(m.to_string());
        let specs = [self.knots.is_some(), self.placement.is_some(), self.preset.is_some()];
        if specs.iter().filter(|&&b| b).count() > 1 {
            return Err(usage("use at most one of --knots, --placement, --preset"));
        }
        let (data, preset) = match (&self.data, &self.fixture) {
            (Some(path), None) => {
                if self.preset.is_some() {
                    return Err(usage("--preset requires --fixture"));
                }
                (read_dataset(path)?, None)
            }
            (None, Some(name)) => {
                let f = fixtures::find(name)?;
                let preset = match &self.preset {
                    Some(p) => Some(f.preset(p)?.to_vec()),
                    None => None,
                };
                (f.dataset(), preset)
            }
            _ => return Err(usage("give exactly one of --data or --fixture")),
        };
        let spec = if let Some(x) = preset {
            KnotSpec::Knots { x }
        } else if let Some(p) = self.knots.as_deref().or(self.placement.as_deref()) {
            KnotSpec::read(p)?
        } else {
            KnotSpec::Default
        };
        Ok((data, spec))
    }
}

fn csv_text<T: Serialize>(rows: &[T]) -> Result<String, ServiceError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| ServiceError::InvalidRequest(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| ServiceError::InvalidRequest(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn unsupported(format: OutputFormat, cmd: &str) -> ServiceError {
    ServiceError::Usage(format!("format {format:?} is not available for `{cmd}`"))
}

/// `fit`: JSON is the full curve response, CSV the samples.
pub fn fit(input: &Input, samples: usize, format: OutputFormat) -> Result<String, ServiceError> {
    let (data, spec) = input.load()?;
    let resp = curve_response(&data, &spec, samples)?;
    match format {
        OutputFormat::Json => Ok(to_json(&resp)),
        OutputFormat::Csv => csv_text(&resp.samples),
        OutputFormat::Table => Err(unsupported(format, "fit")),
    }
}

#[derive(Serialize)]
struct EstimatesOut<'a> {
    knot_estimates: &'a [crate::response::KnotEstimate],
}

/// `derivs`: derivative estimates at `tau_2..tau_{N-1}`.
pub fn derivs(input: &Input, format: OutputFormat) -> Result<String, ServiceError> {
    let (data, spec) = input.load()?;
    let est = knot_estimates(&data, &spec)?;
    match format {
        OutputFormat::Json => Ok(to_json(&EstimatesOut { knot_estimates: &est })),
        OutputFormat::Csv => csv_text(&est),
        OutputFormat::Table => Err(unsupported(format, "derivs")),
    }
}

#[derive(Debug, Clone)]
pub struct EocArgs {
    pub function: String,
    pub mode: GridMode,
    pub ratio: Option<f64>,
    pub j_min: u32,
    pub j_max: u32,
}

impl Default for EocArgs {
    fn default() -> Self {
        let cfg = ExperimentConfig::uniform();
        Self {
            function: "quartic-sine".into(),
            mode: GridMode::Uniform,
            ratio: None,
            j_min: cfg.j_min,
            j_max: cfg.j_max,
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    j: u32,
    h: f64,
    h_bar: f64,
    err1: f64,
    eoc1: Option<f64>,
    err2: f64,
    eoc2: Option<f64>,
    err3: f64,
    eoc3: Option<f64>,
    err2_raw: f64,
    err3_raw: f64,
}

/// `eoc`: the refinement study. Ratio mode defaults to `H_{i+1} = 3 H_i`.
pub fn eoc(args: &EocArgs, format: OutputFormat) -> Result<String, ServiceError> {
    let f = convergence::lookup(&args.function)?;
    let mut cfg = match args.mode {
        GridMode::Uniform => ExperimentConfig::uniform(),
        GridMode::Ratio => ExperimentConfig::ratio(3.0),
    };
    if let Some(r) = args.ratio {
        cfg.ratio = r;
    }
    cfg.j_min = args.j_min;
    cfg.j_max = args.j_max;
    if cfg.j_max > 40 {
        return Err(ServiceError::Usage(format!("j-max {} exceeds 40", cfg.j_max)));
    }
    let rows = convergence::run_experiment(&f, &cfg)?;
    match format {
        OutputFormat::Table => Ok(convergence::format_table(&rows)),
        OutputFormat::Json => Ok(to_json(&rows)),
        OutputFormat::Csv => csv_text(
            &rows
                .iter()
                .map(|r| CsvRow {
                    j: r.j,
                    h: r.h,
                    h_bar: r.h_bar,
                    err1: r.err1,
                    eoc1: r.eoc1,
                    err2: r.err2,
                    eoc2: r.eoc2,
                    err3: r.err3,
                    eoc3: r.eoc3,
                    err2_raw: r.err2_raw,
                    err3_raw: r.err3_raw,
                })
                .collect::<Vec<_>>(),
        ),
    }
}

/// Writes to `out` or stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), ServiceError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| ServiceError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| ServiceError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
