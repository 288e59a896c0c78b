//! Built-in datasets with named knot presets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dataset::DataSet;
use crate::error::ServiceError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub tau: Vec<f64>,
    #[serde(rename = "F")]
    pub values: Vec<f64>,
    /// Secondary knots `x_2..x_N` per preset.
    pub presets: BTreeMap<&'static str, Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureSummary {
    pub name: &'static str,
    pub n: usize,
    pub presets: Vec<&'static str>,
}

impl Fixture {
    pub fn dataset(&self) -> DataSet {
        DataSet {
            name: Some(self.name.to_string()),
            tau: self.tau.clone(),
            values: self.values.clone(),
        }
    }

    pub fn preset(&self, name: &str) -> Result<&[f64], ServiceError> {
        self.presets
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| ServiceError::UnknownPreset {
                fixture: self.name.to_string(),
                preset: name.to_string(),
            })
    }

    pub fn summary(&self) -> FixtureSummary {
        FixtureSummary {
            name: self.name,
            n: self.tau.len(),
            presets: self.presets.keys().copied().collect(),
        }
    }
}

/// Monotone data set from the Fritsch-Carlson study, with two knot
/// placements that differ only at `x_7` and `x_8`.
pub fn fritsch_carlson() -> Fixture {
    let mut presets = BTreeMap::new();
    presets.insert("exp1", vec![7.99, 8.14, 8.445, 8.95, 9.6, 11.0, 13.5, 20.0]);
    presets.insert("exp2", vec![7.99, 8.14, 8.445, 8.95, 9.6, 10.1, 12.1, 20.0]);
    Fixture {
        name: "fritsch-carlson",
        tau: vec![7.99, 8.09, 8.19, 8.7, 9.2, 10.0, 12.0, 15.0, 20.0],
        values: vec![
            0.0,
            0.0000276429,
            0.0437498,
            0.169183,
            0.469428,
            0.94374,
            0.998636,
            0.999919,
            0.999994,
        ],
        presets,
    }
}

pub fn all() -> Vec<Fixture> {
    vec![fritsch_carlson()]
}

pub fn find(name: &str) -> Result<Fixture, ServiceError> {
    all()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| ServiceError::UnknownFixture(name.to_string()))
}
