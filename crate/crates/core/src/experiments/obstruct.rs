use super::{median, write_csv, ExperimentError, Metadata};
use crate::engine::{run, DtPolicy, OffsetMode, RunConfig};
use crate::model::{b_constant, Potential, PotentialProblem, Schedule, SearchGraph, VertexId};
use crate::oracle::{build_symmetric_block, ground_pair, p_functionals, Example};
use crate::rng::derive_seed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// `max(1, round(coef * n^exponent))`; exponent 0 gives a budget that is the
/// same for every `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub coef: f64,
    pub exponent: f64,
}

impl Budget {
    pub fn fixed(value: usize) -> Self {
        Self { coef: value as f64, exponent: 0.0 }
    }

    pub fn at(&self, n: u32) -> usize {
        ((self.coef * (n as f64).powf(self.exponent)).round() as usize).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructConfig {
    pub ns: Vec<u32>,
    pub walkers: Budget,
    pub steps: Budget,
    pub trials: usize,
    pub seed: u64,
    pub c: f64,
    pub dt: DtPolicy,
    pub offset_gain: f64,
    pub offset_mode: OffsetMode,
}

impl Default for ObstructConfig {
    fn default() -> Self {
        Self {
            ns: vec![16, 24, 32, 48, 64],
            walkers: Budget::fixed(16),
            steps: Budget::fixed(1000),
            trials: 200,
            seed: 0,
            c: crate::model::DEFAULT_SPIKE,
            dt: DtPolicy::default(),
            offset_gain: 1.0,
            offset_mode: OffsetMode::Proportional,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// First step at which some walker sat on `0...0` (0 = initial placement).
    pub first_hit_step: Option<usize>,
    /// Whether that happened while `s <= 1/2`.
    pub hit_by_half: bool,
    /// Fraction of surviving walkers on `0...0` after the last step.
    pub terminal_p0: f64,
    pub extinct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub n: u32,
    pub walkers: usize,
    #[serde(rename = "T")]
    pub steps: usize,
    pub trials: usize,
    pub hits_by_half: usize,
    pub hit_fraction_by_half: f64,
    pub hits: usize,
    /// Median over trials that hit at all.
    pub median_first_hit: Option<f64>,
    /// Mean over trials that did not go extinct.
    pub mean_terminal_p0: Option<f64>,
    pub extinctions: usize,
    pub oracle_p1_zero: f64,
}

/// Last step whose schedule parameter is at most `1/2`.
fn half_step(schedule: &Schedule) -> usize {
    (1..=schedule.steps).take_while(|&t| schedule.s_at(t) <= 0.5).last().unwrap_or(0)
}

fn run_trial(n: u32, cfg: &ObstructConfig, walkers: usize, steps: usize, seed: u64) -> Result<TrialOutcome, ExperimentError> {
    let b = b_constant(n);
    let problem = PotentialProblem::new(SearchGraph::Hypercube { n }, Potential::Spiked { n, b_const: b, c_const: cfg.c })
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let schedule = Schedule::example1(n, b, cfg.c, steps).map_err(|e| ExperimentError::Config(e.to_string()))?;
    let run_cfg = RunConfig {
        walkers,
        seed,
        dt: cfg.dt,
        offset_gain: cfg.offset_gain,
        offset_mode: cfg.offset_mode,
        parallel: true,
        record_trace: false,
    };
    let result = run(&problem, &schedule, &run_cfg)?;
    // the objective is the s = 1 potential, negative only at the origin
    let first_hit_step = result.first_step_reaching(-0.5 * cfg.c);
    let size = result.terminal_size();
    let terminal_p0 = if size == 0 {
        0.0
    } else {
        *result.terminal_population.get(&VertexId(0)).unwrap_or(&0) as f64 / size as f64
    };
    Ok(TrialOutcome {
        first_hit_step,
        hit_by_half: first_hit_step.is_some_and(|t| t <= half_step(&schedule)),
        terminal_p0,
        extinct: !result.completed(),
    })
}

/// Runs all trials for one `n`; trial `i` uses seed `derive_seed(derive_seed(seed, n), i)`.
pub fn obstruction_trials(n: u32, cfg: &ObstructConfig) -> Result<Vec<TrialOutcome>, ExperimentError> {
    let (walkers, steps) = (cfg.walkers.at(n), cfg.steps.at(n));
    let base = derive_seed(cfg.seed, n as u64);
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(n, cfg, walkers, steps, derive_seed(base, i as u64)))
        .collect()
}

/// The spiked Hamiltonian under SSMC: how often the walkers find the origin before the
/// spike appears, and how much of the population sits there at the end.
pub fn run_obstruction(cfg: &ObstructConfig) -> Result<Vec<ObstructionReport>, ExperimentError> {
    if cfg.trials == 0 {
        return Err(ExperimentError::Config("trials must be at least 1".into()));
    }
    if !(cfg.c > 0.0 && cfg.c.is_finite()) {
        return Err(ExperimentError::Config(format!("spike depth must be positive, got {}", cfg.c)));
    }
    if cfg.ns.is_empty() || cfg.ns.iter().any(|&n| n == 0 || n > 64) {
        return Err(ExperimentError::Config("every n must lie in 1..=64".into()));
    }
    cfg.ns
        .iter()
        .map(|&n| {
            let trials = obstruction_trials(n, cfg)?;
            let oracle = p_functionals(&ground_pair(&build_symmetric_block(n, 1.0, b_constant(n), cfg.c, Example::Spike))?);
            let hits_by_half = trials.iter().filter(|t| t.hit_by_half).count();
            let mut first: Vec<f64> = trials.iter().filter_map(|t| t.first_hit_step.map(|s| s as f64)).collect();
            let survivors: Vec<f64> = trials.iter().filter(|t| !t.extinct).map(|t| t.terminal_p0).collect();
            Ok(ObstructionReport {
                n,
                walkers: cfg.walkers.at(n),
                steps: cfg.steps.at(n),
                trials: trials.len(),
                hits_by_half,
                hit_fraction_by_half: hits_by_half as f64 / trials.len() as f64,
                hits: first.len(),
                median_first_hit: median(&mut first),
                mean_terminal_p0: (!survivors.is_empty()).then(|| survivors.iter().sum::<f64>() / survivors.len() as f64),
                extinctions: trials.iter().filter(|t| t.extinct).count(),
                oracle_p1_zero: oracle.p1_zero,
            })
        })
        .collect()
}

pub fn write_obstruction_csv<W: Write>(
    out: &mut W,
    cfg: &ObstructConfig,
    rows: &[ObstructionReport],
) -> Result<(), ExperimentError> {
    let meta = Metadata::new("obstruct", Some(cfg.seed), cfg)?;
    write_csv(out, &meta, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(Budget::fixed(16).at(64), 16);
        assert_eq!(Budget { coef: 2.0, exponent: 1.5 }.at(16), 128);
        assert_eq!(Budget { coef: 0.0, exponent: 1.0 }.at(16), 1);
    }

    #[test]
    fn half_step_on_uniform_grid() {
        assert_eq!(half_step(&Schedule::linear(10).unwrap()), 5);
        assert_eq!(half_step(&Schedule::linear(9).unwrap()), 4);
    }

    #[test]
    fn tiny_cube_is_not_obstructed() {
        let cfg = ObstructConfig {
            ns: vec![4],
            walkers: Budget::fixed(2000),
            steps: Budget::fixed(400),
            trials: 4,
            seed: 11,
            ..ObstructConfig::default()
        };
        let r = &run_obstruction(&cfg).unwrap()[0];
        assert_eq!(r.hits, 4);
        assert_eq!(r.extinctions, 0);
        let p = r.mean_terminal_p0.unwrap();
        assert!((p - r.oracle_p1_zero).abs() < 0.1, "terminal {p} oracle {}", r.oracle_p1_zero);
        assert!(r.median_first_hit.unwrap() <= r.steps as f64);
    }

    #[test]
    fn rejects_zero_trials() {
        let cfg = ObstructConfig { trials: 0, ..ObstructConfig::default() };
        assert!(matches!(run_obstruction(&cfg), Err(ExperimentError::Config(_))));
    }
}
