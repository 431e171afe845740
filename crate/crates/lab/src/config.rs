//! Flat `key = value` experiment configuration with a typed schema per
//! experiment.
//!
//! The format is deliberately minimal and diff-friendly: one `key = value`
//! pair per line, `#` comments, blank lines ignored. Lists are
//! comma-separated. Every experiment declares its full schema; unknown keys
//! and type mismatches are rejected with the field named.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{LabError, LabResult};

/// The experiments the harness knows how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Convergence,
    Counterexample,
    KernelDecay,
    Vdc,
    MeasureMaximal,
    LowerBound,
    Bessel,
    RadialSharpness,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Convergence,
        Experiment::Counterexample,
        Experiment::KernelDecay,
        Experiment::Vdc,
        Experiment::MeasureMaximal,
        Experiment::LowerBound,
        Experiment::Bessel,
        Experiment::RadialSharpness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Convergence => "convergence",
            Experiment::Counterexample => "counterexample",
            Experiment::KernelDecay => "kernel-decay",
            Experiment::Vdc => "vdc",
            Experiment::MeasureMaximal => "measure-maximal",
            Experiment::LowerBound => "lower-bound",
            Experiment::Bessel => "bessel",
            Experiment::RadialSharpness => "radial-sharpness",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Phase-assembly precision selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrecisionChoice {
    Double,
    #[default]
    Extended,
}

impl PrecisionChoice {
    pub fn name(self) -> &'static str {
        match self {
            PrecisionChoice::Double => "double",
            PrecisionChoice::Extended => "extended",
        }
    }

    pub fn to_core(self) -> bsq_core::wavepacket::Precision {
        match self {
            PrecisionChoice::Double => bsq_core::wavepacket::Precision::Double,
            PrecisionChoice::Extended => bsq_core::wavepacket::Precision::Extended,
        }
    }
}

/// A parsed flat configuration: raw strings keyed by field name.
#[derive(Debug, Clone, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> LabResult<Config> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                LabError::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                ))
            })?;
            let key = key.trim().to_string();
            if key.is_empty() {
                return Err(LabError::Config(format!("line {}: empty key", lineno + 1)));
            }
            if values
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                return Err(LabError::Config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> LabResult<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            LabError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn raw(&self) -> &BTreeMap<String, String> {
        &self.values
    }
}

/// Field types the schema understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    F64,
    Usize,
    ListF64,
}

/// One experiment's typed view of a [`Config`]: every field carries a
/// default, and reading an unknown or ill-typed field is a schema error.
pub struct Schema {
    experiment: Experiment,
    fields: Vec<(&'static str, Kind, String)>,
}

impl Schema {
    pub fn new(experiment: Experiment) -> Schema {
        Schema {
            experiment,
            fields: Vec::new(),
        }
    }

    pub fn f64(mut self, key: &'static str, default: f64) -> Schema {
        self.fields.push((key, Kind::F64, format!("{default}")));
        self
    }

    pub fn usize(mut self, key: &'static str, default: usize) -> Schema {
        self.fields.push((key, Kind::Usize, format!("{default}")));
        self
    }

    pub fn list_f64(mut self, key: &'static str, default: &[f64]) -> Schema {
        let joined = default
            .iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join(",");
        self.fields.push((key, Kind::ListF64, joined));
        self
    }

    /// Validate the config against this schema and return the resolved
    /// (defaults-applied) field map.
    pub fn resolve(&self, config: &Config) -> LabResult<Resolved> {
        for key in config.values.keys() {
            if !self.fields.iter().any(|(k, _, _)| k == key) {
                let known = self
                    .fields
                    .iter()
                    .map(|(k, _, _)| *k)
                    .collect::<Vec<_>>()
                    .join(", ");
                return Err(LabError::Config(format!(
                    "experiment `{}` does not accept field `{key}` (known fields: {known})",
                    self.experiment
                )));
            }
        }
        let mut out = BTreeMap::new();
        for (key, kind, default) in &self.fields {
            let raw = config.values.get(*key).unwrap_or(default).clone();
            // Type-check now so errors name the field.
            match kind {
                Kind::F64 => {
                    parse_scalar::<f64>(&self.experiment, key, &raw)?;
                }
                Kind::Usize => {
                    parse_scalar::<usize>(&self.experiment, key, &raw)?;
                }
                Kind::ListF64 => {
                    parse_list(&self.experiment, key, &raw)?;
                }
            }
            out.insert((*key).to_string(), (*kind, raw));
        }
        Ok(Resolved {
            experiment: self.experiment,
            values: out,
        })
    }
}

fn parse_scalar<T: FromStr>(exp: &Experiment, key: &str, raw: &str) -> LabResult<T> {
    raw.parse().map_err(|_| {
        LabError::Config(format!(
            "experiment `{exp}`: field `{key}` cannot be parsed from `{raw}`"
        ))
    })
}

fn parse_list(exp: &Experiment, key: &str, raw: &str) -> LabResult<Vec<f64>> {
    raw.split(',')
        .map(|p| parse_scalar::<f64>(exp, key, p.trim()))
        .collect()
}

/// A fully validated, defaults-applied configuration.
#[derive(Debug)]
pub struct Resolved {
    experiment: Experiment,
    values: BTreeMap<String, (Kind, String)>,
}

impl Resolved {
    pub fn experiment(&self) -> Experiment {
        self.experiment
    }

    pub fn f64(&self, key: &str) -> f64 {
        let (kind, raw) = &self.values[key];
        assert_eq!(*kind, Kind::F64, "field {key} is not f64");
        raw.parse().unwrap()
    }

    pub fn usize(&self, key: &str) -> usize {
        let (kind, raw) = &self.values[key];
        assert_eq!(*kind, Kind::Usize, "field {key} is not usize");
        raw.parse().unwrap()
    }

    pub fn list_f64(&self, key: &str) -> Vec<f64> {
        let (kind, raw) = &self.values[key];
        assert_eq!(*kind, Kind::ListF64, "field {key} is not a list");
        raw.split(',').map(|p| p.trim().parse().unwrap()).collect()
    }

    /// The canonical `key = value` echo used for hashing and the manifest.
    pub fn echo(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|(k, (_, v))| (k.clone(), v.clone()))
            .collect()
    }

    /// A range-check helper that names the offending field.
    pub fn ensure(&self, ok: bool, key: &str, requirement: &str) -> LabResult<()> {
        if ok {
            Ok(())
        } else {
            Err(LabError::Config(format!(
                "experiment `{}`: field `{key}` {requirement}",
                self.experiment
            )))
        }
    }
}
