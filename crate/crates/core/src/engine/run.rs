use super::step::{advance_with, choose_timestep, update_energy_offset, Population, Rates, Snapshot, StepStats};
use super::EngineError;
use crate::model::{Schedule, SearchProblem};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum DtPolicy {
    /// Recompute each step from the population's potential extremes.
    Adaptive { safety: f64, dt_max: f64 },
    Fixed { dt: f64 },
}

impl Default for DtPolicy {
    fn default() -> Self {
        DtPolicy::Adaptive { safety: 0.9, dt_max: 1.0 }
    }
}

/// How the energy offset carries over between steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetMode {
    /// `E_t = gain * ln(N_t / N*)`, recomputed from zero each step.
    #[default]
    Proportional,
    /// `E_t = E_{t-1} + gain * ln(N_t / N*)`.
    Integral,
    /// `E = 0` throughout.
    Disabled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub walkers: usize,
    pub seed: u64,
    pub dt: DtPolicy,
    pub offset_gain: f64,
    pub offset_mode: OffsetMode,
    /// Allow walker updates to run on the rayon pool. Results do not depend
    /// on this.
    pub parallel: bool,
    pub record_trace: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            walkers: 16,
            seed: 0,
            dt: DtPolicy::default(),
            offset_gain: 1.0,
            offset_mode: OffsetMode::Proportional,
            parallel: true,
            record_trace: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    Extinct { step: usize },
}

/// A strict improvement of the best objective value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Incumbent<V> {
    /// 0 for the initial placement, otherwise the 1-based step.
    pub step: usize,
    pub value: f64,
    pub vertex: V,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult<V: Ord> {
    pub status: RunStatus,
    pub best_vertex: V,
    pub best_value: f64,
    pub incumbents: Vec<Incumbent<V>>,
    pub trace: Vec<StepStats>,
    pub steps_completed: usize,
    pub terminal_population: BTreeMap<V, usize>,
}

impl<V: Ord + Clone> RunResult<V> {
    pub fn completed(&self) -> bool {
        self.status == RunStatus::Completed
    }

    /// Step at which the best value was first reached.
    pub fn best_step(&self) -> usize {
        self.incumbents.last().map_or(0, |i| i.step)
    }

    /// First step at which some walker had objective `<= value`.
    pub fn first_step_reaching(&self, value: f64) -> Option<usize> {
        self.incumbents.iter().find(|i| i.value <= value).map(|i| i.step)
    }

    pub fn terminal_size(&self) -> usize {
        self.terminal_population.values().sum()
    }
}

struct Tracker<V> {
    incumbents: Vec<Incumbent<V>>,
}

impl<V: Clone> Tracker<V> {
    fn offer(&mut self, step: usize, value: f64, vertex: &V) {
        if self.incumbents.last().is_none_or(|i| value < i.value) {
            self.incumbents.push(Incumbent { step, value, vertex: vertex.clone() });
        }
    }
}

/// Sweeps `s` over the schedule's grid with a population initialized
/// uniformly over the vertex set.
///
/// Per step: evaluate potentials at the current `s`, update the offset from
/// the population size, pick `dt`, then advance every walker once.
/// Extinction ends the run early with [`RunStatus::Extinct`] and the partial
/// trace; it is not an `Err`.
pub fn run<P: SearchProblem>(
    problem: &P,
    schedule: &Schedule,
    config: &RunConfig,
) -> Result<RunResult<P::Vertex>, EngineError> {
    run_observed(problem, schedule, config, |_, _| {})
}

/// [`run`], calling `observe(t, population)` after every completed step.
pub fn run_observed<P, F>(
    problem: &P,
    schedule: &Schedule,
    config: &RunConfig,
    mut observe: F,
) -> Result<RunResult<P::Vertex>, EngineError>
where
    P: SearchProblem,
    F: FnMut(usize, &Population<P::Walker>),
{
    if config.walkers == 0 {
        return Err(EngineError::Config("walkers must be at least 1".into()));
    }
    match config.dt {
        DtPolicy::Adaptive { safety, dt_max } if !(safety > 0.0 && safety <= 1.0 && dt_max > 0.0) => {
            return Err(EngineError::Config(format!("bad adaptive dt policy: safety {safety}, dt_max {dt_max}")));
        }
        DtPolicy::Fixed { dt } if dt <= 0.0 => {
            return Err(EngineError::Config(format!("fixed dt must be positive, got {dt}")));
        }
        _ => {}
    }

    let mut pop = Population::uniform(problem, config.walkers, config.seed);
    let mut tracker = Tracker { incumbents: Vec::new() };
    for w in &pop.walkers {
        tracker.offer(0, problem.objective(w), &problem.vertex(w));
    }

    let mut trace = Vec::with_capacity(if config.record_trace { schedule.steps } else { 0 });
    let mut status = RunStatus::Completed;
    let max_degree = problem.max_degree();

    for t in 1..=schedule.steps {
        let s = schedule.s_at(t);
        let (hop, weight) = schedule.engine_rates(s);
        let rates = Rates { hop, weight };
        let snapshot = Snapshot::take(problem, &pop.walkers, s);

        let base = match config.offset_mode {
            OffsetMode::Proportional => 0.0,
            OffsetMode::Integral => pop.energy_offset,
            OffsetMode::Disabled => 0.0,
        };
        pop.energy_offset = match config.offset_mode {
            OffsetMode::Disabled => 0.0,
            _ => update_energy_offset(pop.len(), pop.target_size, base, config.offset_gain)?,
        };

        let dt = match config.dt {
            DtPolicy::Adaptive { safety, dt_max } => choose_timestep(
                rates,
                max_degree,
                snapshot.min,
                snapshot.max,
                snapshot.mean,
                pop.energy_offset,
                safety,
                dt_max,
            ),
            DtPolicy::Fixed { dt } => dt,
        };

        match advance_with(problem, &mut pop, &snapshot, s, rates, dt, config.seed, config.parallel) {
            Ok(report) => {
                if let Some((value, vertex)) = &report.best_hop {
                    tracker.offer(t, *value, vertex);
                }
                if config.record_trace {
                    trace.push(report.stats);
                }
                observe(t, &pop);
            }
            Err(EngineError::Extinction { .. }) => {
                status = RunStatus::Extinct { step: t };
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let steps_completed = match status {
        RunStatus::Completed => schedule.steps,
        RunStatus::Extinct { step } => step - 1,
    };
    let mut terminal_population = BTreeMap::new();
    for w in &pop.walkers {
        *terminal_population.entry(problem.vertex(w)).or_insert(0) += 1;
    }
    let best = tracker.incumbents.last().expect("initial population is nonempty").clone();
    Ok(RunResult {
        status,
        best_vertex: best.vertex,
        best_value: best.value,
        incumbents: tracker.incumbents,
        trace,
        steps_completed,
        terminal_population,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Grid, Potential, PotentialProblem, SearchGraph, VertexId};
    use rand::{Rng, SeedableRng};

    fn table_problem(n: u32, seed: u64) -> (PotentialProblem, VertexId) {
        let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(seed);
        let mut values: Vec<f64> = (0..1u64 << n).map(|_| rng.random_range(1.0..5.0)).collect();
        let target = rng.random_range(0..values.len());
        values[target] = 0.0;
        (PotentialProblem::new(SearchGraph::Hypercube { n }, Potential::Table(values)).unwrap(), VertexId(target as u64))
    }

    #[test]
    fn finds_planted_minimum() {
        let schedule = Schedule::linear(2000).unwrap();
        let mut hits = 0;
        for seed in 0..100 {
            let (problem, target) = table_problem(8, 1000 + seed);
            // brute-force argmin
            let argmin = (0..256u64)
                .map(VertexId)
                .min_by(|a, b| problem.potential(a, 1.0).total_cmp(&problem.potential(b, 1.0)))
                .unwrap();
            assert_eq!(argmin, target);
            let cfg = RunConfig { walkers: 64, seed, record_trace: false, ..RunConfig::default() };
            let result = run(&problem, &schedule, &cfg).unwrap();
            if result.best_vertex == argmin {
                hits += 1;
            }
        }
        assert!(hits >= 95, "hits {hits}/100");
    }

    #[test]
    fn constant_potential_stays_uniform() {
        let n = 4;
        let problem = PotentialProblem::new(SearchGraph::Hypercube { n }, Potential::Table(vec![1.5; 16])).unwrap();
        let schedule = Schedule::linear(400).unwrap();
        let cfg = RunConfig { walkers: 10_000, seed: 3, ..RunConfig::default() };
        let result = run(&problem, &schedule, &cfg).unwrap();
        for step in &result.trace {
            assert_eq!(step.deaths + step.spawns, 0, "{step:?}");
        }
        let total = result.terminal_size() as f64;
        let tv: f64 = (0..16u64)
            .map(|v| (*result.terminal_population.get(&VertexId(v)).unwrap_or(&0) as f64 / total - 1.0 / 16.0).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.1, "tv {tv}");
    }

    #[test]
    fn identical_config_identical_result() {
        let (problem, _) = table_problem(9, 5);
        let schedule = Schedule::linear(300).unwrap();
        let cfg = RunConfig { walkers: 40, seed: 99, ..RunConfig::default() };
        let a = run(&problem, &schedule, &cfg).unwrap();
        let b = run(&problem, &schedule, &cfg).unwrap();
        assert_eq!(a, b);
        let c = run(&problem, &schedule, &RunConfig { parallel: false, ..cfg.clone() }).unwrap();
        assert_eq!(a, c);
        let d = run(&problem, &schedule, &RunConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a.trace, d.trace);
    }

    #[test]
    fn extinction_is_reported_with_partial_trace() {
        // a single walker at an energy above a large positive offset dies
        let problem = PotentialProblem::new(SearchGraph::Hypercube { n: 3 }, Potential::HammingWeight).unwrap();
        let schedule = Schedule::constant(0.0, 1.0, 500).unwrap();
        let cfg = RunConfig {
            walkers: 1,
            seed: 1,
            dt: DtPolicy::Fixed { dt: 0.5 },
            offset_mode: OffsetMode::Integral,
            offset_gain: 0.0,
            ..RunConfig::default()
        };
        // with gain 0 and one walker the event probability is 0: no extinction
        let r = run(&problem, &schedule, &cfg).unwrap();
        assert!(r.completed());

        let mut pop = Population::uniform(&problem, 1, 0);
        pop.energy_offset = 1.0;
        let err = super::super::advance_population(&problem, &mut pop, 1.0, Rates { hop: 0.0, weight: 1.0 }, 1.0, 0);
        match err {
            Err(EngineError::Extinction { step }) => assert_eq!(step, 0),
            Ok(_) => assert_eq!(pop.len(), 1),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn extinct_run_flags_status() {
        let problem = PotentialProblem::new(SearchGraph::Hypercube { n: 3 }, Potential::HammingWeight).unwrap();
        // integral control with negative gain pushes the offset the wrong way
        let schedule = Schedule::constant(0.0, 1.0, 2000).unwrap();
        let cfg = RunConfig {
            walkers: 4,
            seed: 2,
            dt: DtPolicy::Adaptive { safety: 0.9, dt_max: 1.0 },
            offset_mode: OffsetMode::Integral,
            offset_gain: -1.0,
            ..RunConfig::default()
        };
        let r = run(&problem, &schedule, &cfg).unwrap();
        match r.status {
            RunStatus::Extinct { step } => {
                assert_eq!(r.trace.len(), step - 1);
                assert_eq!(r.steps_completed, step - 1);
                assert!(r.terminal_population.is_empty());
            }
            RunStatus::Completed => panic!("expected extinction"),
        }
    }

    #[test]
    fn fixed_dt_violation_is_an_error() {
        let problem = PotentialProblem::new(SearchGraph::Hypercube { n: 4 }, Potential::HammingWeight).unwrap();
        let schedule = Schedule::linear(10).unwrap();
        let cfg = RunConfig { dt: DtPolicy::Fixed { dt: 1.0 }, ..RunConfig::default() };
        assert!(matches!(run(&problem, &schedule, &cfg), Err(EngineError::TimestepTooLarge { .. })));
        let cfg = RunConfig { walkers: 0, ..RunConfig::default() };
        assert!(matches!(run(&problem, &schedule, &cfg), Err(EngineError::Config(_))));
    }

    #[test]
    fn fixed_grid_runs_at_one_s() {
        let problem = PotentialProblem::new(SearchGraph::Hypercube { n: 4 }, Potential::HammingWeight).unwrap();
        let schedule = Schedule::linear(20).unwrap().with_grid(Grid::Fixed(0.25)).unwrap();
        let r = run(&problem, &schedule, &RunConfig::default()).unwrap();
        assert!(r.trace.iter().all(|st| st.s == 0.25));
        assert_eq!(r.best_value, 0.0_f64.max(r.best_value));
    }
}
