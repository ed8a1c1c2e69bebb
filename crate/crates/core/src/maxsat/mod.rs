//! Unweighted MAX-k-SAT: DIMACS ingestion, clause-violation potential with
//! per-walker incremental caches, and the SSMC solver driver.

mod cache;
mod dimacs;
mod exhaustive;
mod formula;
mod generate;
mod solve;

pub use cache::{delta_unsat_on_flip, ClauseState};
pub use dimacs::{parse_dimacs, ParseError, ParseErrorKind};
pub use exhaustive::{exhaustive_minimum, MAX_EXHAUSTIVE_VARS};
pub use formula::{unsat_count, Assignment, CnfFormula, FormulaError, Literal, Occurrence};
pub use generate::{chain_2sat, planted_kcnf, random_kcnf};
pub use solve::{
    contest_runtime, solve_maxsat, MaxSatProblem, RuntimeCoefficients, RuntimeError, SolveConfig, SolveError,
    SolveOutcome,
};
