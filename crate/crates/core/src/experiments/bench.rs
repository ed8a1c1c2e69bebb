use super::{median, write_csv, ExperimentError, Metadata};
use crate::maxsat::{exhaustive_minimum, random_kcnf, solve_maxsat, RuntimeCoefficients, SolveConfig};
use crate::rng::derive_seed;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::time::Instant;

/// Clause-to-variable ratios for generated instances. These are generator
/// choices, picked near the satisfiability thresholds.
pub const DEFAULT_RATIO_2SAT: f64 = 3.0;
pub const DEFAULT_RATIO_3SAT: f64 = 4.26;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub k: usize,
    pub ns: Vec<usize>,
    pub instances: usize,
    pub seed: u64,
    pub walkers: usize,
    /// Clauses per variable; `None` picks the default for `k`.
    pub ratio: Option<f64>,
    /// Required for widths without calibrated runtime coefficients.
    pub coefficients: Option<RuntimeCoefficients>,
    /// Largest `n` verified by exhaustive search.
    pub verify_limit: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            k: 2,
            ns: vec![10, 12, 14, 16, 18, 20],
            instances: 10,
            seed: 0,
            walkers: 16,
            ratio: None,
            coefficients: None,
            verify_limit: 24,
        }
    }
}

impl BenchConfig {
    fn ratio(&self) -> Result<f64, ExperimentError> {
        match (self.ratio, self.k) {
            (Some(r), _) if r > 0.0 && r.is_finite() => Ok(r),
            (Some(r), _) => Err(ExperimentError::Config(format!("clause ratio must be positive, got {r}"))),
            (None, 2) => Ok(DEFAULT_RATIO_2SAT),
            (None, 3) => Ok(DEFAULT_RATIO_3SAT),
            (None, k) => Err(ExperimentError::Config(format!("no default clause ratio for k = {k}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub steps: usize,
    pub instances: usize,
    pub median_seconds: f64,
    pub mean_unsat: f64,
    /// Empty when `n` is above the verification limit.
    pub success_fraction: Option<f64>,
    pub verified: bool,
}

struct InstanceResult {
    seconds: f64,
    unsat: usize,
    optimal: Option<bool>,
    steps: usize,
}

/// Instance `i` at size `n` is generated from `derive_seed(derive_seed(seed, n), 2i)`
/// and solved with seed `derive_seed(derive_seed(seed, n), 2i + 1)`.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, ExperimentError> {
    if cfg.instances == 0 || cfg.ns.is_empty() {
        return Err(ExperimentError::Config("bench needs at least one n and one instance".into()));
    }
    if cfg.k == 0 || cfg.ns.iter().any(|&n| n < cfg.k) {
        return Err(ExperimentError::Config(format!("every n must be at least k = {}", cfg.k)));
    }
    let coefficients = cfg
        .coefficients
        .or_else(|| RuntimeCoefficients::for_width(cfg.k))
        .ok_or_else(|| ExperimentError::Config(format!("k = {} needs explicit runtime coefficients", cfg.k)))?;
    let ratio = cfg.ratio()?;

    let mut rows = Vec::with_capacity(cfg.ns.len());
    for &n in &cfg.ns {
        let base = derive_seed(cfg.seed, n as u64);
        let m = (ratio * n as f64).round().max(1.0) as usize;
        let results: Vec<InstanceResult> = (0..cfg.instances)
            .into_par_iter()
            .map(|i| {
                let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(derive_seed(base, 2 * i as u64));
                let f = random_kcnf(n, cfg.k, m, &mut rng);
                let solve_cfg = SolveConfig {
                    walkers: cfg.walkers,
                    coefficients: Some(coefficients),
                    seed: derive_seed(base, 2 * i as u64 + 1),
                    ..SolveConfig::default()
                };
                let start = Instant::now();
                let outcome = solve_maxsat(&f, &solve_cfg)?;
                let seconds = start.elapsed().as_secs_f64();
                let optimal = (n <= cfg.verify_limit)
                    .then(|| exhaustive_minimum(&f))
                    .flatten()
                    .map(|(best, _)| outcome.unsat == best);
                Ok(InstanceResult { seconds, unsat: outcome.unsat, optimal, steps: outcome.steps })
            })
            .collect::<Result<_, ExperimentError>>()?;

        let verified = results.iter().all(|r| r.optimal.is_some());
        let mut times: Vec<f64> = results.iter().map(|r| r.seconds).collect();
        rows.push(BenchRow {
            n,
            k: cfg.k,
            steps: results[0].steps,
            instances: results.len(),
            median_seconds: median(&mut times).unwrap_or(0.0),
            mean_unsat: results.iter().map(|r| r.unsat as f64).sum::<f64>() / results.len() as f64,
            success_fraction: verified
                .then(|| results.iter().filter(|r| r.optimal == Some(true)).count() as f64 / results.len() as f64),
            verified,
        });
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(out: &mut W, cfg: &BenchConfig, rows: &[BenchRow]) -> Result<(), ExperimentError> {
    let meta = Metadata::new("bench", Some(cfg.seed), cfg)?;
    write_csv(out, &meta, rows)
}
