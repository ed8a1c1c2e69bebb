use super::block::{build_symmetric_block, ground_pair, Example, GroundData};
use super::OracleError;
use crate::model::b_constant;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapCurve {
    pub n: u32,
    pub s: Vec<f64>,
    pub gap: Vec<f64>,
}

impl GapCurve {
    /// Grid index of the smallest gap.
    pub fn argmin(&self) -> usize {
        (0..self.gap.len()).min_by(|&a, &b| self.gap[a].total_cmp(&self.gap[b])).unwrap_or(0)
    }

    pub fn min_gap(&self) -> f64 {
        self.gap[self.argmin()]
    }
}

/// Spectral gap of the spiked Hamiltonian at each `s` of a grid inside `[1/2, 1]`.
pub fn gap_curve(n: u32, c_const: f64, s_samples: &[f64]) -> Result<GapCurve, OracleError> {
    if s_samples.is_empty() || s_samples.iter().any(|s| !(0.5..=1.0).contains(s)) {
        return Err(OracleError::InvalidParameter("gap curve grid must be nonempty and inside [1/2, 1]".into()));
    }
    let b = b_constant(n);
    let gap = s_samples
        .iter()
        .map(|&si| ground_pair(&build_symmetric_block(n, si, b, c_const, Example::Spike)).map(|g| g.gap))
        .collect::<Result<_, _>>()?;
    Ok(GapCurve { n, s: s_samples.to_vec(), gap })
}

/// `points` equally spaced values from `1/2` to `1`.
pub fn upper_half_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..points).map(|i| 0.5 + 0.5 * i as f64 / (points - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeChatelierPoint {
    pub c: f64,
    pub e0: f64,
    /// `|<0|psi_0>|^2`.
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeChatelierReport {
    pub n: u32,
    pub points: Vec<LeChatelierPoint>,
    pub overlap_nondecreasing: bool,
    pub energy_concave: bool,
    /// Overlap above one half at the largest `c`.
    pub overlap_above_half: bool,
}

impl LeChatelierReport {
    pub fn holds(&self) -> bool {
        self.overlap_nondecreasing && self.energy_concave && self.overlap_above_half
    }
}

/// Sweeps `H0(1) - c P` over `cs` (ascending). By Hellmann-Feynman the
/// slope of the ground energy in `c` is minus the overlap with `|0>`, so a
/// nondecreasing overlap and a concave energy are the same statement; both
/// are checked numerically.
pub fn le_chatelier_check(n: u32, cs: &[f64]) -> Result<LeChatelierReport, OracleError> {
    if cs.len() < 3 || cs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(OracleError::InvalidParameter("need at least three strictly ascending c values".into()));
    }
    let b = b_constant(n);
    let mut points = Vec::with_capacity(cs.len());
    for &c in cs {
        let mut blk = build_symmetric_block(n, 1.0, b, 0.0, Example::Ramp);
        blk.diag[0] -= c;
        let g: GroundData = ground_pair(&blk)?;
        points.push(LeChatelierPoint { c, e0: g.e0, overlap: g.alpha[0] * g.alpha[0] });
    }
    let tol = 1e-12;
    let overlap_nondecreasing = points.windows(2).all(|w| w[1].overlap >= w[0].overlap - tol);
    let energy_concave = points.windows(3).all(|w| {
        let left = (w[1].e0 - w[0].e0) / (w[1].c - w[0].c);
        let right = (w[2].e0 - w[1].e0) / (w[2].c - w[1].c);
        right <= left + tol
    });
    let overlap_above_half = points.last().is_some_and(|p| p.overlap > 0.5);
    Ok(LeChatelierReport { n, points, overlap_nondecreasing, energy_concave, overlap_above_half })
}

/// Least-squares fit of `p = A + B / sqrt(n)`.
pub fn fit_inverse_sqrt(ns: &[f64], ps: &[f64]) -> Option<(f64, f64)> {
    if ns.len() != ps.len() || ns.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = ns.iter().map(|n| 1.0 / n.sqrt()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ps.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ps).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Some((my - slope * mx, slope))
}
