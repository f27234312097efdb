//! Report assembly. The payload is everything that depends only on
//! `(config, seed)`; timing and thread count live in a separate envelope
//! and stay out of the hash.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use shiftlab_core::diagnostics::{Verdict, EXPANSIVE_TOL, INTERTWINING_TOL, RANK_TOL};
use shiftlab_core::op_lab::{GRAM_FLOOR, TAIL_TOL};

use crate::config::{ExperimentConfig, Format};
use crate::error::CliError;
use crate::experiments::Outcome;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Payload {
    pub version: &'static str,
    pub experiment: &'static str,
    pub config: ExperimentConfig,
    pub verdicts: Vec<Verdict>,
    pub results: BTreeMap<String, Value>,
    pub artifacts: BTreeMap<String, PathBuf>,
    pub tolerances: BTreeMap<&'static str, f64>,
    pub unexpected_failures: Vec<String>,
    pub unexpected_passes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub elapsed_ms: f64,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub payload_sha256: String,
    #[serde(flatten)]
    pub payload: Payload,
    pub envelope: Envelope,
}

/// Library-wide defaults recorded with every report.
pub fn default_tolerances() -> BTreeMap<&'static str, f64> {
    BTreeMap::from([
        ("expansive", EXPANSIVE_TOL),
        ("intertwining", INTERTWINING_TOL),
        ("rank_relative", RANK_TOL),
        ("series_tail", TAIL_TOL),
        ("gram_floor", GRAM_FLOOR),
        ("matrix_entry", 1e-9),
    ])
}

pub fn hash_payload(p: &Payload) -> String {
    let bytes = serde_json::to_vec(p).expect("payload serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn artifact_path(out: &Path, name: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    out.with_file_name(format!("{stem}.{name}.json"))
}

impl Payload {
    /// Splits verdicts by the expected-fail list; names on the list that no
    /// verdict carries are a configuration error.
    pub fn assemble(cfg: &ExperimentConfig, outcome: &Outcome, artifacts: BTreeMap<String, PathBuf>) -> Result<Self, CliError> {
        for name in &cfg.expected_fail {
            if !outcome.verdicts.iter().any(|v| &v.name == name) {
                return Err(CliError::Validation(format!("expected_fail names unknown verdict {name:?}")));
            }
        }
        let listed = |v: &Verdict| cfg.expected_fail.contains(&v.name);
        let unexpected_failures = outcome.verdicts.iter().filter(|v| !v.pass && !listed(v)).map(|v| v.name.clone()).collect();
        let unexpected_passes = outcome.verdicts.iter().filter(|v| v.pass && listed(v)).map(|v| v.name.clone()).collect();
        Ok(Self {
            version: VERSION,
            experiment: cfg.experiment.name(),
            config: cfg.clone(),
            verdicts: outcome.verdicts.clone(),
            results: outcome.results.clone(),
            artifacts,
            tolerances: default_tolerances(),
            unexpected_failures,
            unexpected_passes,
        })
    }
}

/// Writes artifacts next to the output path and returns their locations.
pub fn write_artifacts(cfg: &ExperimentConfig, outcome: &Outcome) -> Result<BTreeMap<String, PathBuf>, CliError> {
    let mut paths = BTreeMap::new();
    let Some(out) = &cfg.output.path else { return Ok(paths) };
    for a in &outcome.artifacts {
        let p = artifact_path(out, &a.name);
        std::fs::write(&p, serde_json::to_vec_pretty(&a.body).expect("artifact serializes"))?;
        paths.insert(a.name.clone(), p);
    }
    Ok(paths)
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).expect("report serializes") + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "value", "threshold", "direction", "pass", "band", "dims", "params"])
                .map_err(|e| CliError::Io(e.into()))?;
            for v in &report.payload.verdicts {
                let dims: Vec<String> = v.dims.iter().map(|d| d.to_string()).collect();
                w.write_record([
                    v.name.clone(),
                    format!("{:e}", v.value),
                    format!("{:e}", v.threshold),
                    serde_json::to_value(v.direction).expect("direction").as_str().unwrap_or("").to_string(),
                    v.pass.to_string(),
                    v.band.to_string(),
                    dims.join(" "),
                    serde_json::to_string(&v.params).expect("params serialize"),
                ])
                .map_err(|e| CliError::Io(e.into()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
    }
}
