//! Substochastic Monte Carlo walker process.
//!
//! Each step, every walker on vertex `j` does exactly one of: hop to a
//! neighbor (each with probability `a dt`), stay, or die/spawn with
//! probability `|b dt (w_j - <W> + E)|`. The threshold `<W>` is the mean
//! potential of the population before the step and `E` is the population
//! control offset.

mod run;
mod step;

pub use run::{run, run_observed, DtPolicy, Incumbent, OffsetMode, RunConfig, RunResult, RunStatus};
pub use step::{
    advance_population, choose_timestep, step_probabilities, update_energy_offset, EventKind, Population,
    Rates, StepProbabilities, StepStats,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(
        "timestep {dt} too large for walker energy {energy}: hop total {hop_total} + event {event} exceeds 1"
    )]
    TimestepTooLarge { dt: f64, energy: f64, hop_total: f64, event: f64 },
    #[error("population went extinct at step {step}")]
    Extinction { step: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}
