//! Substochastic Monte Carlo (SSMC) for stoquastic annealing schedules.
//!
//! * [`model`]: search graphs, potentials and schedules.
//! * [`engine`]: the walker population process.
//! * [`maxsat`]: DIMACS ingestion and an incremental clause-violation
//!   potential, with a solver driver.
//! * [`oracle`]: exact spectra of permutation-symmetric hypercube
//!   Hamiltonians and the closed forms they are checked against.
//! * [`experiments`]: scripted experiments with CSV/JSON output.

pub mod engine;
pub mod experiments;
pub mod maxsat;
pub mod model;
pub mod oracle;
pub mod rng;
