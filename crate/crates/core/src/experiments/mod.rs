//! Scripted experiments. Every output starts with enough metadata (tool
//! version, seed, full configuration) to rerun it bit-identically; CSV files
//! carry it as `#` comment lines, JSON documents as a `metadata` field.
//!
//! Work is spread over the rayon pool but results are gathered in input
//! order from per-item derived seeds, so outputs do not depend on the
//! thread count.

mod bench;
mod obstruct;
mod oracle_sweep;
mod solve;

pub use bench::{run_bench, write_bench_csv, BenchConfig, BenchRow, DEFAULT_RATIO_2SAT, DEFAULT_RATIO_3SAT};
pub use obstruct::{obstruction_trials, run_obstruction, write_obstruction_csv, Budget, ObstructConfig, ObstructionReport, TrialOutcome};
pub use oracle_sweep::{fit_p1_at_end, oracle_sweep, write_oracle_csv, OracleRow, OracleSweepConfig};
pub use solve::{report_lines, SolveSummary};

use serde::Serialize;
use std::io::{self, Write};
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
    #[error(transparent)]
    Solve(#[from] crate::maxsat::SolveError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: &'static str,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
}

impl Metadata {
    pub fn new<C: Serialize>(experiment: &'static str, seed: Option<u64>, config: &C) -> Result<Self, ExperimentError> {
        Ok(Self { tool: "ssmc", version: TOOL_VERSION, experiment, seed, config: serde_json::to_value(config)? })
    }

    pub fn write_comment_header<W: Write>(&self, out: &mut W) -> Result<(), ExperimentError> {
        writeln!(out, "# {} {}", self.tool, self.version)?;
        writeln!(out, "# experiment: {}", self.experiment)?;
        match self.seed {
            Some(seed) => writeln!(out, "# seed: {seed}")?,
            None => writeln!(out, "# seed: none")?,
        }
        writeln!(out, "# config: {}", serde_json::to_string(&self.config)?)?;
        Ok(())
    }
}

/// Writes `rows` as CSV after the metadata header.
pub(crate) fn write_csv<W: Write, R: Serialize>(out: &mut W, meta: &Metadata, rows: &[R]) -> Result<(), ExperimentError> {
    meta.write_comment_header(out)?;
    let mut writer = csv::Writer::from_writer(out);
    for r in rows {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub(crate) fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 { values[m] } else { 0.5 * (values[m - 1] + values[m]) })
}
