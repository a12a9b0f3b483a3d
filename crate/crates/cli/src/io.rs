//! JSON documents read and written by the CLI.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use duropoly_core::nonskim::StrategyProfile2P;
use duropoly_core::{EquilibriumSolution, Instance, Rational};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::Failure;

/// Reads and parses a JSON file, reporting the failing field path together
/// with serde_json's line and column.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text).map_err(|msg| Failure::Validation(format!("{}: {msg}", path.display())))
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." || path.is_empty() {
            inner.to_string()
        } else {
            format!("field `{path}`: {inner}")
        }
    })
}

pub fn load_instance(path: &Path) -> Result<Instance, Failure> {
    load_json(path)
}

/// What `solve --format json` writes. `verify --solution` reads it back.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub instance: Instance,
    pub solution: EquilibriumSolution,
}

/// `{"mu1": "70", "thresholds": {"80": "45", "70": "70", "45": "45"}}`.
/// Thresholds may also be a list in the instance's descending value order.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub mu1: Rational,
    pub thresholds: ThresholdSpec,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThresholdSpec {
    ByValue(BTreeMap<String, Rational>),
    PerConsumer(Vec<Rational>),
}

impl ProfileDoc {
    pub fn resolve(&self, inst: &Instance) -> Result<StrategyProfile2P, Failure> {
        let thresholds = match &self.thresholds {
            ThresholdSpec::PerConsumer(list) => list.clone(),
            ThresholdSpec::ByValue(map) => {
                let mut by_value = BTreeMap::new();
                for (key, th) in map {
                    let value: Rational = key
                        .parse()
                        .map_err(|_| Failure::Validation(format!("threshold key `{key}` is not a rational")))?;
                    if by_value.insert(value, th.clone()).is_some() {
                        return Err(Failure::Validation(format!("threshold key `{key}` repeats a value")));
                    }
                }
                if let Some(stray) = by_value.keys().find(|v| !inst.valuations().contains(v)) {
                    return Err(Failure::Validation(format!(
                        "threshold given for {stray}, which no consumer has"
                    )));
                }
                inst.valuations()
                    .iter()
                    .map(|v| {
                        by_value
                            .get(v)
                            .cloned()
                            .ok_or_else(|| Failure::Validation(format!("no threshold for value {v}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        Ok(StrategyProfile2P {
            thresholds,
            first_price: self.mu1.clone(),
        })
    }

    /// Value-keyed when consumers sharing a value share a threshold.
    pub fn from_profile(inst: &Instance, prof: &StrategyProfile2P) -> Self {
        let mut map = BTreeMap::new();
        let mut consistent = true;
        for (v, th) in inst.valuations().iter().zip(&prof.thresholds) {
            if let Some(prev) = map.insert(v.to_string(), th.clone()) {
                consistent &= prev == *th;
            }
        }
        let thresholds = if consistent {
            ThresholdSpec::ByValue(map)
        } else {
            ThresholdSpec::PerConsumer(prof.thresholds.clone())
        };
        ProfileDoc {
            mu1: prof.first_price.clone(),
            thresholds,
        }
    }
}
