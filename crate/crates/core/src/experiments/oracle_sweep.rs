use super::{write_csv, ExperimentError, Metadata};
use crate::model::b_constant;
use crate::oracle::{build_symmetric_block, fit_inverse_sqrt, ground_pair, p_functionals, Example};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSweepConfig {
    pub example: Example,
    pub ns: Vec<u32>,
    /// Spike depth; ignored by the ramp example.
    pub c: f64,
    pub s_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub n: u32,
    pub s: f64,
    #[serde(rename = "E0")]
    pub e0: f64,
    #[serde(rename = "E1")]
    pub e1: f64,
    pub gap: f64,
    pub p1_zero: f64,
    pub p2_zero: f64,
}

/// One row per `(n, s)`, ordered by `n` then `s` as given.
pub fn oracle_sweep(cfg: &OracleSweepConfig) -> Result<Vec<OracleRow>, ExperimentError> {
    if cfg.ns.is_empty() || cfg.s_grid.is_empty() {
        return Err(ExperimentError::Config("oracle sweep needs at least one n and one s".into()));
    }
    if let Some(n) = cfg.ns.iter().find(|&&n| n == 0) {
        return Err(ExperimentError::Config(format!("n must be positive, got {n}")));
    }
    if let Some(s) = cfg.s_grid.iter().find(|s| !(0.0..=1.0).contains(*s)) {
        return Err(ExperimentError::Config(format!("s must lie in [0, 1], got {s}")));
    }
    if !(cfg.c >= 0.0 && cfg.c.is_finite()) {
        return Err(ExperimentError::Config(format!("c must be finite and nonnegative, got {}", cfg.c)));
    }
    let points: Vec<(u32, f64)> = cfg.ns.iter().flat_map(|&n| cfg.s_grid.iter().map(move |&s| (n, s))).collect();
    points
        .par_iter()
        .map(|&(n, s)| {
            let g = ground_pair(&build_symmetric_block(n, s, b_constant(n), cfg.c, cfg.example))?;
            let p = p_functionals(&g);
            Ok(OracleRow { n, s, e0: g.e0, e1: g.e1, gap: g.gap, p1_zero: p.p1_zero, p2_zero: p.p2_zero })
        })
        .collect()
}

pub fn write_oracle_csv<W: Write>(out: &mut W, cfg: &OracleSweepConfig, rows: &[OracleRow]) -> Result<(), ExperimentError> {
    let meta = Metadata::new("oracle", None, cfg)?;
    write_csv(out, &meta, rows)
}

/// Fits `p1_zero(s = 1) = A + B / sqrt(n)` over the rows at `s = 1`.
pub fn fit_p1_at_end(rows: &[OracleRow]) -> Option<(f64, f64)> {
    let (ns, ps): (Vec<f64>, Vec<f64>) = rows.iter().filter(|r| r.s == 1.0).map(|r| (r.n as f64, r.p1_zero)).unzip();
    fit_inverse_sqrt(&ns, &ps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_schema() {
        let cfg = OracleSweepConfig { example: Example::Ramp, ns: vec![4, 100], c: 0.0, s_grid: vec![0.0, 1.0] };
        let rows = oracle_sweep(&cfg).unwrap();
        let keys: Vec<(u32, f64)> = rows.iter().map(|r| (r.n, r.s)).collect();
        assert_eq!(keys, vec![(4, 0.0), (4, 1.0), (100, 0.0), (100, 1.0)]);
        assert!((rows[0].gap - 0.5).abs() < 1e-13);
        let exact = (1.0 - 1.0 / 400.0f64).powi(200);
        assert!((rows[3].p2_zero - exact).abs() < 1e-10 * exact);

        let mut buf = Vec::new();
        write_oracle_csv(&mut buf, &cfg, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, "n,s,E0,E1,gap,p1_zero,p2_zero");
    }

    #[test]
    fn rejects_bad_grid() {
        let cfg = OracleSweepConfig { example: Example::Spike, ns: vec![4], c: 2.0, s_grid: vec![1.5] };
        assert!(matches!(oracle_sweep(&cfg), Err(ExperimentError::Config(_))));
    }
}
