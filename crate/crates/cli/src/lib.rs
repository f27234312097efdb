//! Configuration-driven runner for the shiftlab experiments.
//!
//! A run parses one TOML file, applies command-line overrides, executes the
//! experiment and writes a report whose payload hash depends only on the
//! resolved configuration and seed.

pub mod catalog;
pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

use std::time::Instant;

pub use config::{ExperimentConfig, ExperimentKind, Format, Overrides};
pub use error::CliError;
pub use report::Report;

/// A finished run: the report and its exit status.
pub struct RunResult {
    pub report: Report,
    pub rendered: String,
    pub exit_code: i32,
}

/// Runs `cfg` and writes the report to `cfg.output.path` when set.
///
/// Exit status is 0 when every verdict passes or fails only where the
/// configuration expects it, and 1 otherwise.
pub fn run(cfg: &ExperimentConfig) -> Result<RunResult, CliError> {
    let start = Instant::now();
    let outcome = experiments::run_experiment(cfg)?;
    let artifacts = report::write_artifacts(cfg, &outcome)?;
    let payload = report::Payload::assemble(cfg, &outcome, artifacts)?;
    let exit_code = if payload.unexpected_failures.is_empty() { 0 } else { 1 };
    let report = Report {
        payload_sha256: report::hash_payload(&payload),
        payload,
        envelope: report::Envelope {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            threads: rayon::current_num_threads(),
        },
    };
    let rendered = report::render(&report, cfg.output.format)?;
    if let Some(path) = &cfg.output.path {
        std::fs::write(path, &rendered)?;
    }
    Ok(RunResult { report, rendered, exit_code })
}

/// Sizes the global worker pool from `SHIFTLAB_THREADS` when it is set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SHIFTLAB_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Validation(format!("SHIFTLAB_THREADS = {raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))
}
