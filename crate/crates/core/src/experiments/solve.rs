use super::{ExperimentError, Metadata};
use crate::maxsat::{CnfFormula, SolveConfig, SolveOutcome};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncumbentRecord {
    pub step: usize,
    pub unsat: usize,
}

/// Machine-readable result of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveSummary {
    pub metadata: Metadata,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub walkers: usize,
    pub steps: usize,
    pub steps_completed: usize,
    pub extinct: bool,
    pub best_unsat: usize,
    pub best_step: usize,
    pub assignment: Vec<i32>,
    pub incumbents: Vec<IncumbentRecord>,
}

impl SolveSummary {
    pub fn new(f: &CnfFormula, cfg: &SolveConfig, outcome: &SolveOutcome) -> Result<Self, ExperimentError> {
        Ok(Self {
            metadata: Metadata::new("solve", Some(cfg.seed), cfg)?,
            num_vars: f.num_vars(),
            num_clauses: f.num_clauses(),
            walkers: cfg.walkers,
            steps: outcome.steps,
            steps_completed: outcome.run.steps_completed,
            extinct: outcome.extinct(),
            best_unsat: outcome.unsat,
            best_step: outcome.run.best_step(),
            assignment: outcome.assignment.literals().collect(),
            incumbents: outcome
                .run
                .incumbents
                .iter()
                .map(|i| IncumbentRecord { step: i.step, unsat: i.value as usize })
                .collect(),
        })
    }
}

/// Solver report in the MAX-SAT evaluation style: `c` comments, one `o`
/// line per incumbent, an `s` status line and the `v` assignment line.
/// Only a zero-violation assignment is reported as optimal.
pub fn report_lines(f: &CnfFormula, outcome: &SolveOutcome) -> Vec<String> {
    let mut lines = vec![format!(
        "c ssmc {} vars {} clauses {} steps {}",
        super::TOOL_VERSION,
        f.num_vars(),
        f.num_clauses(),
        outcome.steps
    )];
    lines.extend(outcome.run.incumbents.iter().map(|i| format!("o {}", i.value as usize)));
    if let crate::engine::RunStatus::Extinct { step } = outcome.run.status {
        lines.push(format!("c population extinct at step {step}"));
    }
    lines.push(if outcome.unsat == 0 { "s OPTIMUM FOUND".into() } else { "s UNKNOWN".into() });
    lines.push(format!("v {}", outcome.assignment));
    lines
}
