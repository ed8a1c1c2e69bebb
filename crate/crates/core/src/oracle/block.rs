use super::tridiag::{gershgorin, kth_eigenvalue, log_eigenvector};
use super::{ln_binomials, log_sum_exp, OracleError};
use crate::model::schedule::{example1_b, example1_c};
use serde::{Deserialize, Serialize};

/// Which Hamiltonian family a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Example {
    /// `H0(s) = (1/n)[L + s b W]`.
    Ramp,
    /// `H1(s) = (1/n)[L + b(s) W] - c(s) P`.
    Spike,
}

impl Example {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(Example::Ramp),
            1 => Some(Example::Spike),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Example::Ramp => 0,
            Example::Spike => 1,
        }
    }

    /// `(b coefficient, spike depth)` at `s`.
    pub fn coefficients(self, s: f64, b_const: f64, c_const: f64) -> (f64, f64) {
        match self {
            Example::Ramp => (s * b_const, 0.0),
            Example::Spike => (example1_b(s, b_const), example1_c(s, c_const)),
        }
    }
}

/// Restriction of a permutation-invariant Hamiltonian to the span of the
/// weight states `|psi_w>`, `w = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBlock {
    pub n: u32,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymmetricBlock {
    /// Max-row-sum norm.
    pub fn norm(&self) -> f64 {
        let (lo, hi) = gershgorin(&self.diag, &self.offdiag);
        lo.abs().max(hi.abs())
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.diag.len();
        (0..m)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < m {
                    y += self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

/// Builds the weight-basis block. The degree term of `L/n` contributes `+1`
/// to every diagonal entry and `-(1/n) sum_k X_k` couples `w` to `w+1` with
/// `-(1/n) sqrt((w+1)(n-w))`.
pub fn build_symmetric_block(n: u32, s: f64, b_const: f64, c_const: f64, example: Example) -> SymmetricBlock {
    assert!(n >= 1, "block needs at least one qubit");
    let nf = n as f64;
    let (b, c) = example.coefficients(s, b_const, c_const);
    let mut diag: Vec<f64> = (0..=n).map(|w| 1.0 + b * w as f64 / nf).collect();
    diag[0] -= c;
    let offdiag = (0..n).map(|w| -(((w + 1) as f64) * ((n - w) as f64)).sqrt() / nf).collect();
    SymmetricBlock { n, diag, offdiag }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundData {
    pub e0: f64,
    pub e1: f64,
    pub gap: f64,
    /// L2-normalized weight-basis coefficients, nonnegative.
    pub alpha: Vec<f64>,
    /// `ln alpha_w`; finite even where `alpha_w` underflows.
    pub log_alpha: Vec<f64>,
    /// `||H alpha - e0 alpha||_2`.
    pub residual: f64,
}

/// Two lowest eigenvalues and the ground vector of a block.
pub fn ground_pair(block: &SymmetricBlock) -> Result<GroundData, OracleError> {
    if block.diag.len() < 2 {
        return Err(OracleError::InvalidParameter("block must be at least 2x2".into()));
    }
    let e0 = kth_eigenvalue(&block.diag, &block.offdiag, 0)?;
    let e1 = kth_eigenvalue(&block.diag, &block.offdiag, 1)?;
    let (mut log_abs, mut sign) = log_eigenvector(&block.diag, &block.offdiag, e0);

    let norm = 0.5 * log_sum_exp(log_abs.iter().map(|l| 2.0 * l));
    for l in &mut log_abs {
        *l -= norm;
    }
    // largest-magnitude entry positive
    let peak = (0..log_abs.len()).max_by(|&a, &b| log_abs[a].total_cmp(&log_abs[b])).unwrap_or(0);
    if sign[peak] < 0.0 {
        sign.iter_mut().for_each(|s| *s = -*s);
    }
    let alpha: Vec<f64> = log_abs.iter().zip(&sign).map(|(l, s)| s * l.exp()).collect();

    let h_alpha = block.apply(&alpha);
    let residual = h_alpha.iter().zip(&alpha).map(|(h, a)| (h - e0 * a).powi(2)).sum::<f64>().sqrt();
    let bound = 1e-10 * block.norm();
    if residual > bound {
        return Err(OracleError::Residual { residual, bound });
    }
    Ok(GroundData { e0, e1, gap: e1 - e0, alpha, log_alpha: log_abs, residual })
}

/// L1 (walker) versus L2 (measurement) distributions of a symmetric ground
/// state.
#[derive(Debug, Clone, PartialEq)]
pub struct PFunctionals {
    pub p1_zero: f64,
    pub p2_zero: f64,
    /// L1-normalized probability mass on each Hamming weight.
    pub p1_by_weight: Vec<f64>,
}

/// A vertex of weight `w` has amplitude `alpha_w / sqrt(C(n, w))`, so the
/// L1 mass of weight `w` is `alpha_w sqrt(C(n, w))`.
pub fn p_functionals(g: &GroundData) -> PFunctionals {
    let n = g.alpha.len() - 1;
    let lb = ln_binomials(n);
    let log_mass: Vec<f64> = g.log_alpha.iter().zip(&lb).map(|(la, l)| la + 0.5 * l).collect();
    let total = log_sum_exp(log_mass.iter().copied());
    PFunctionals {
        p1_zero: (g.log_alpha[0] - total).exp(),
        p2_zero: (2.0 * g.log_alpha[0]).exp(),
        p1_by_weight: log_mass.iter().map(|l| (l - total).exp()).collect(),
    }
}
