//! Dataset ingestion. CSV files carry a `tau,F` header; JSON files an
//! object with `tau` and `F` arrays. Input must already be sorted by `tau`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use varcurve_core::PrimaryGrid;

use crate::error::ServiceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Json,
}

impl DataFormat {
    /// `.json` files are JSON, anything else is CSV unless it starts with `{`.
    pub fn detect(path: &Path, bytes: &[u8]) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => DataFormat::Json,
            Some(e) if e.eq_ignore_ascii_case("csv") => DataFormat::Csv,
            _ if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') => DataFormat::Json,
            _ => DataFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub tau: Vec<f64>,
    #[serde(rename = "F")]
    pub values: Vec<f64>,
}

impl DataSet {
    pub fn grid(&self) -> Result<PrimaryGrid, ServiceError> {
        Ok(PrimaryGrid::new(self.tau.clone(), self.values.clone())?)
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }
}

#[derive(Deserialize)]
struct CsvRecord {
    tau: f64,
    #[serde(rename = "F")]
    value: f64,
}

fn parse_csv(bytes: &[u8]) -> Result<DataSet, ServiceError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| ServiceError::Parse(e.to_string()))?
        .clone();
    if headers.len() != 2 || &headers[0] != "tau" || &headers[1] != "F" {
        return Err(ServiceError::Parse(format!(
            "expected header `tau,F`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut tau = Vec::new();
    let mut values = Vec::new();
    for (k, rec) in reader.deserialize::<CsvRecord>().enumerate() {
        let rec = rec.map_err(|e| ServiceError::Parse(format!("record {}: {e}", k + 1)))?;
        tau.push(rec.tau);
        values.push(rec.value);
    }
    Ok(DataSet {
        name: None,
        tau,
        values,
    })
}

/// Parses and validates a dataset.
pub fn parse_dataset(bytes: &[u8], format: DataFormat) -> Result<DataSet, ServiceError> {
    let data = match format {
        DataFormat::Csv => parse_csv(bytes)?,
        DataFormat::Json => {
            serde_json::from_slice(bytes).map_err(|e| ServiceError::Parse(e.to_string()))?
        }
    };
    data.grid()?;
    Ok(data)
}

pub fn read_dataset(path: &Path) -> Result<DataSet, ServiceError> {
    let bytes = std::fs::read(path).map_err(|source| ServiceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_dataset(&bytes, DataFormat::detect(path, &bytes))
}
