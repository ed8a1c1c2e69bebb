use super::cache::ClauseState;
use super::formula::{Assignment, CnfFormula};
use crate::engine::{self, DtPolicy, EngineError, OffsetMode, RunConfig, RunResult};
use crate::model::{Schedule, ScheduleError, SearchProblem};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The `n`-cube over a formula's variables with potential = violated clauses.
#[derive(Debug, Clone, Copy)]
pub struct MaxSatProblem<'a> {
    formula: &'a CnfFormula,
}

impl<'a> MaxSatProblem<'a> {
    pub fn new(formula: &'a CnfFormula) -> Self {
        Self { formula }
    }
}

impl SearchProblem for MaxSatProblem<'_> {
    type Walker = ClauseState;
    type Vertex = Assignment;

    fn random_walker<R: Rng + ?Sized>(&self, rng: &mut R) -> ClauseState {
        let n = self.formula.num_vars();
        let bools: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        ClauseState::new(self.formula, Assignment::from_bools(&bools))
    }

    fn vertex(&self, walker: &ClauseState) -> Assignment {
        walker.assignment().clone()
    }

    fn degree(&self, _walker: &ClauseState) -> usize {
        self.formula.num_vars()
    }

    fn max_degree(&self) -> usize {
        self.formula.num_vars()
    }

    fn hop(&self, walker: &mut ClauseState, k: usize) {
        walker.flip(self.formula, k + 1);
    }

    fn potential(&self, walker: &ClauseState, _s: f64) -> f64 {
        walker.unsat() as f64
    }

    fn objective(&self, walker: &ClauseState) -> f64 {
        walker.unsat() as f64
    }
}

/// `T = round(exp(slope * n + intercept))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeCoefficients {
    pub slope: f64,
    pub intercept: f64,
}

impl RuntimeCoefficients {
    pub const MAX2SAT: Self = Self { slope: 0.022, intercept: 5.9 };
    pub const MAX3SAT: Self = Self { slope: 0.035, intercept: 6.1 };

    pub fn for_width(k: usize) -> Option<Self> {
        match k {
            2 => Some(Self::MAX2SAT),
            3 => Some(Self::MAX3SAT),
            _ => None,
        }
    }

    pub fn steps(&self, n: usize) -> u64 {
        ((self.slope * n as f64 + self.intercept).exp().round() as u64).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuntimeError {
    #[error("no calibrated runtime for clause width {0}; supply coefficients")]
    Uncalibrated(usize),
}

pub fn contest_runtime(n: usize, k: usize) -> Result<u64, RuntimeError> {
    RuntimeCoefficients::for_width(k).map(|c| c.steps(n)).ok_or(RuntimeError::Uncalibrated(k))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub walkers: usize,
    /// Steps `T`; `None` derives it from the formula's width and size.
    pub steps: Option<usize>,
    pub coefficients: Option<RuntimeCoefficients>,
    pub seed: u64,
    pub dt: DtPolicy,
    pub offset_gain: f64,
    pub offset_mode: OffsetMode,
    pub record_trace: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            walkers: 16,
            steps: None,
            coefficients: None,
            seed: 0,
            dt: DtPolicy::default(),
            offset_gain: 1.0,
            offset_mode: OffsetMode::Proportional,
            record_trace: false,
        }
    }
}

impl SolveConfig {
    pub fn resolve_steps(&self, f: &CnfFormula) -> Result<usize, SolveError> {
        if let Some(t) = self.steps {
            return if t == 0 { Err(SolveError::Schedule(ScheduleError::NoSteps)) } else { Ok(t) };
        }
        let k = f.max_clause_width();
        let coeffs = self
            .coefficients
            .or_else(|| RuntimeCoefficients::for_width(k))
            .ok_or(SolveError::Runtime(RuntimeError::Uncalibrated(k)))?;
        Ok(coeffs.steps(f.num_vars()) as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error(transparent)]
    Runtime(#[from] RuntimeError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub assignment: Assignment,
    pub unsat: usize,
    pub steps: usize,
    pub run: RunResult<Assignment>,
}

impl SolveOutcome {
    pub fn extinct(&self) -> bool {
        !self.run.completed()
    }
}

/// Runs SSMC on the formula's hypercube under the linear schedule and
/// returns the best assignment seen. Extinction is reported through
/// [`SolveOutcome::extinct`] with the best found before it.
pub fn solve_maxsat(f: &CnfFormula, cfg: &SolveConfig) -> Result<SolveOutcome, SolveError> {
    if f.num_clauses() == 0 {
        return Err(SolveError::EmptyFormula);
    }
    let steps = cfg.resolve_steps(f)?;
    let schedule = Schedule::linear(steps)?;
    let run_cfg = RunConfig {
        walkers: cfg.walkers,
        seed: cfg.seed,
        dt: cfg.dt,
        offset_gain: cfg.offset_gain,
        offset_mode: cfg.offset_mode,
        parallel: true,
        record_trace: cfg.record_trace,
    };
    let run = engine::run(&MaxSatProblem::new(f), &schedule, &run_cfg)?;
    Ok(SolveOutcome { assignment: run.best_vertex.clone(), unsat: run.best_value as usize, steps, run })
}
