//! Report assembly and deterministic emission: CSV data files, a JSON
//! manifest, and a plain-text summary, all named by experiment plus a
//! content hash of the configuration so reruns and sibling experiments
//! never collide.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Experiment, PrecisionChoice};
use crate::error::{LabError, LabResult};

/// One CSV table: a named column layout plus numeric rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Table {
        Table {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "ragged row in table {}", self.name);
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(',');
                }
                first = false;
                // 17 significant decimal digits: round-trips every f64.
                let _ = write!(out, "{v:.16e}");
            }
            out.push('\n');
        }
        out
    }
}

/// One named acceptance check with its measured outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything an experiment run produces, prior to serialization.
#[derive(Debug, Clone)]
pub struct Report {
    pub experiment: Experiment,
    pub config_echo: BTreeMap<String, String>,
    pub seed: u64,
    pub threads: usize,
    pub precision: PrecisionChoice,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
    /// Named scalar results recorded in the manifest.
    pub scalars: Vec<(String, f64)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(
        experiment: Experiment,
        config_echo: BTreeMap<String, String>,
        seed: u64,
        threads: usize,
        precision: PrecisionChoice,
    ) -> Report {
        Report {
            experiment,
            config_echo,
            seed,
            threads,
            precision,
            warnings: Vec::new(),
            checks: Vec::new(),
            scalars: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    pub fn scalar(&mut self, name: &str, value: f64) {
        self.scalars.push((name.to_string(), value));
    }

    pub fn all_passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// Content hash of (experiment, config, seed, precision). Thread count
    /// is deliberately excluded: results must be independent of it.
    pub fn config_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.experiment.name().as_bytes());
        h.update([0]);
        for (k, v) in &self.config_echo {
            h.update(k.as_bytes());
            h.update([1]);
            h.update(v.as_bytes());
            h.update([2]);
        }
        h.update(self.seed.to_le_bytes());
        h.update(self.precision.name().as_bytes());
        let digest = h.finalize();
        let mut s = String::new();
        for b in &digest[..6] {
            let _ = write!(s, "{b:02x}");
        }
        s
    }

    fn stem(&self) -> String {
        format!("{}-{}", self.experiment.name(), self.config_hash())
    }

    fn manifest_json(&self, files: &[String]) -> String {
        #[derive(Serialize)]
        struct Manifest<'a> {
            experiment: &'a str,
            version: &'a str,
            config: &'a BTreeMap<String, String>,
            seed: u64,
            threads: usize,
            precision: &'a str,
            warnings: &'a [String],
            checks: &'a [Check],
            scalars: BTreeMap<&'a str, f64>,
            files: &'a [String],
            passed: bool,
        }
        let scalars: BTreeMap<&str, f64> =
            self.scalars.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let m = Manifest {
            experiment: self.experiment.name(),
            version: env!("CARGO_PKG_VERSION"),
            config: &self.config_echo,
            seed: self.seed,
            threads: self.threads,
            precision: self.precision.name(),
            warnings: &self.warnings,
            checks: &self.checks,
            scalars,
            files,
            passed: self.all_passed(),
        };
        serde_json::to_string_pretty(&m).expect("manifest serialization cannot fail") + "\n"
    }

    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment: {}", self.experiment);
        let _ = writeln!(out, "run id: {}", self.stem());
        let _ = writeln!(out, "seed: {}  precision: {}", self.seed, self.precision.name());
        for (k, v) in &self.config_echo {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for (k, v) in &self.scalars {
            let _ = writeln!(out, "{k} = {v:.6e}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "WARNING: {w}");
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{}: {} ({})",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        );
        out
    }

    /// Write every artifact into `out_dir` and return the written paths.
    /// Refuses to emit an empty run (no checks and no tables).
    pub fn emit(&self, out_dir: &Path) -> LabResult<Vec<PathBuf>> {
        if self.checks.is_empty() && self.tables.is_empty() {
            return Err(LabError::Config(
                "refusing to emit an empty report (no checks, no tables)".to_string(),
            ));
        }
        std::fs::create_dir_all(out_dir)?;
        let stem = self.stem();
        let mut files = Vec::new();
        let mut paths = Vec::new();
        for t in &self.tables {
            let name = format!("{stem}.{}.csv", t.name);
            let path = out_dir.join(&name);
            std::fs::write(&path, t.to_csv())?;
            files.push(name);
            paths.push(path);
        }
        let manifest_name = format!("{stem}.manifest.json");
        let manifest_path = out_dir.join(&manifest_name);
        std::fs::write(&manifest_path, self.manifest_json(&files))?;
        paths.push(manifest_path);
        let summary_path = out_dir.join(format!("{stem}.summary.txt"));
        std::fs::write(&summary_path, self.summary_text())?;
        paths.push(summary_path);
        Ok(paths)
    }
}
