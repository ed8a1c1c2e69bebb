//! Exact reference spectra for the hypercube Hamiltonians
//! `H0(s) = (1/n)[L + s b W]` and `H1(s) = (1/n)[L + b(s) W] - c(s) P`.
//!
//! Both commute with qubit permutations, so their two lowest levels live in
//! the `(n+1)`-dimensional symmetric subspace spanned by the uniform
//! superpositions over each Hamming weight. There the Hamiltonian is a
//! symmetric tridiagonal matrix, solved here by Sturm bisection plus a
//! twisted-factorization inverse iteration carried out in log space, so
//! amplitudes far below `f64::MIN_POSITIVE` still contribute correctly to
//! L1-normalized quantities at `n` in the thousands.

mod analysis;
mod block;
mod closed_form;
mod dense;
mod tridiag;

pub use analysis::{fit_inverse_sqrt, gap_curve, le_chatelier_check, GapCurve, LeChatelierPoint, LeChatelierReport};
pub use analysis::upper_half_grid;
pub use block::{build_symmetric_block, ground_pair, p_functionals, Example, GroundData, PFunctionals, SymmetricBlock};
pub use closed_form::{closed_form_example0, ClosedForm0};
pub use dense::{dense_hamiltonian, dense_lowest_eigenvalues, MAX_DENSE_QUBITS};
pub use tridiag::{kth_eigenvalue, log_eigenvector, sturm_count};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("bisection for eigenvalue {index} did not converge after {iterations} iterations (interval [{lo}, {hi}])")]
    NonConvergence { index: usize, iterations: usize, lo: f64, hi: f64 },
    #[error("ground vector residual {residual:e} exceeds {bound:e}")]
    Residual { residual: f64, bound: f64 },
    #[error("dense Hamiltonian refused for n = {0} (limit {MAX_DENSE_QUBITS})")]
    TooLarge(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// `ln C(n, w)` for `w = 0..=n`.
pub(crate) fn ln_binomials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for w in 0..n {
        acc += ((n - w) as f64).ln() - ((w + 1) as f64).ln();
        out.push(acc);
    }
    out
}

pub(crate) fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.map(|x| (x - max).exp()).sum::<f64>().ln()
}
