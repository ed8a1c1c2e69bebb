use super::EngineError;
use crate::model::SearchProblem;
use crate::rng;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Tolerance on probability sums before a configuration counts as invalid.
const PROB_SLACK: f64 = 1e-12;

/// Below this many walkers a step runs sequentially.
const PARALLEL_MIN_WALKERS: usize = 1024;

/// Engine view of the schedule at one `s`: hop coefficient `a(s)` and
/// potential coefficient `b(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub hop: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Die,
    Spawn,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepProbabilities {
    /// Probability of moving to each individual neighbor.
    pub hop_each: f64,
    pub stay: f64,
    pub event: f64,
    pub kind: EventKind,
}

pub fn step_probabilities(
    energy: f64,
    degree: usize,
    rates: Rates,
    dt: f64,
    mean_potential: f64,
    offset: f64,
) -> Result<StepProbabilities, EngineError> {
    let hop_each = rates.hop * dt;
    let hop_total = hop_each * degree as f64;
    let signed = rates.weight * dt * (energy - mean_potential + offset);
    let event = signed.abs();
    if hop_each < 0.0 || hop_total + event > 1.0 + PROB_SLACK {
        return Err(EngineError::TimestepTooLarge { dt, energy, hop_total, event });
    }
    let kind = if signed > 0.0 {
        EventKind::Die
    } else if signed < 0.0 {
        EventKind::Spawn
    } else {
        EventKind::None
    };
    Ok(StepProbabilities { hop_each, stay: (1.0 - hop_total - event).max(0.0), event, kind })
}

/// Log-proportional offset update: `E + gain * ln(size / target)`.
pub fn update_energy_offset(current_size: usize, target_size: usize, offset: f64, gain: f64) -> Result<f64, EngineError> {
    if target_size == 0 {
        return Err(EngineError::Config("target population must be positive".into()));
    }
    if current_size == 0 {
        return Err(EngineError::Extinction { step: 0 });
    }
    Ok(offset + gain * (current_size as f64 / target_size as f64).ln())
}

/// Largest `dt <= dt_max` keeping every walker's probabilities valid, with
/// headroom `safety`.
#[allow(clippy::too_many_arguments)]
pub fn choose_timestep(
    rates: Rates,
    max_degree: usize,
    w_min: f64,
    w_max: f64,
    mean_potential: f64,
    offset: f64,
    safety: f64,
    dt_max: f64,
) -> f64 {
    let deviation = (w_max - mean_potential + offset).abs().max((w_min - mean_potential + offset).abs());
    let rate = rates.hop * max_degree as f64 + rates.weight * deviation;
    if rate > 0.0 {
        (safety / rate).min(dt_max)
    } else {
        dt_max
    }
}

/// Per-step record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepStats {
    pub step: usize,
    pub s: f64,
    pub dt: f64,
    pub mean_potential: f64,
    pub offset: f64,
    /// Size before the step.
    pub population_size: usize,
    pub deaths: usize,
    pub spawns: usize,
    pub hops: usize,
}

#[derive(Debug, Clone)]
pub struct Population<W> {
    pub walkers: Vec<W>,
    pub target_size: usize,
    pub energy_offset: f64,
    pub step_index: usize,
}

impl<W: Clone + Send + Sync> Population<W> {
    /// `target_size` walkers placed uniformly at random.
    pub fn uniform<P>(problem: &P, target_size: usize, seed: u64) -> Self
    where
        P: SearchProblem<Walker = W>,
    {
        let walkers = (0..target_size)
            .map(|i| problem.random_walker(&mut rng::stream(seed, rng::INIT_STEP, i as u64)))
            .collect();
        Self { walkers, target_size, energy_offset: 0.0, step_index: 0 }
    }

    pub fn len(&self) -> usize {
        self.walkers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walkers.is_empty()
    }
}

/// Energies of the current population at one `s`.
pub(crate) struct Snapshot {
    pub energies: Vec<f64>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Snapshot {
    pub fn take<P: SearchProblem>(problem: &P, walkers: &[P::Walker], s: f64) -> Self {
        let energies: Vec<f64> = walkers.iter().map(|w| problem.potential(w, s)).collect();
        let mean = energies.iter().sum::<f64>() / energies.len().max(1) as f64;
        let (min, max) = energies
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| (lo.min(e), hi.max(e)));
        Self { energies, mean, min, max }
    }
}

pub(crate) enum Outcome<W> {
    Stay(W),
    Hop(W, f64),
    Die,
    Spawn(W),
}

/// What a step produced besides the new population.
pub(crate) struct StepReport<V> {
    pub stats: StepStats,
    /// Lowest objective reached by a hop this step, with its vertex; ties go
    /// to the lowest walker index.
    pub best_hop: Option<(f64, V)>,
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn advance_with<P: SearchProblem>(
    problem: &P,
    pop: &mut Population<P::Walker>,
    snapshot: &Snapshot,
    s: f64,
    rates: Rates,
    dt: f64,
    seed: u64,
    parallel: bool,
) -> Result<StepReport<P::Vertex>, EngineError> {
    // validate before touching the population
    let mut probs = Vec::with_capacity(pop.len());
    for (walker, &energy) in pop.walkers.iter().zip(&snapshot.energies) {
        probs.push(step_probabilities(
            energy,
            problem.degree(walker),
            rates,
            dt,
            snapshot.mean,
            pop.energy_offset,
        )?);
    }

    let step = pop.step_index as u64;
    let act = |(index, (mut walker, p)): (usize, (P::Walker, StepProbabilities))| {
        let u: f64 = rng::stream(seed, step, index as u64).random();
        let degree = problem.degree(&walker);
        let hop_total = p.hop_each * degree as f64;
        if u < hop_total {
            let k = ((u / p.hop_each) as usize).min(degree - 1);
            problem.hop(&mut walker, k);
            let value = problem.objective(&walker);
            Outcome::Hop(walker, value)
        } else if u < hop_total + p.event {
            match p.kind {
                EventKind::Die => Outcome::Die,
                EventKind::Spawn => Outcome::Spawn(walker),
                EventKind::None => Outcome::Stay(walker),
            }
        } else {
            Outcome::Stay(walker)
        }
    };

    let walkers = std::mem::take(&mut pop.walkers);
    let size_before = walkers.len();
    let outcomes: Vec<Outcome<P::Walker>> = if parallel && size_before >= PARALLEL_MIN_WALKERS {
        walkers.into_par_iter().zip(probs).enumerate().map(act).collect()
    } else {
        walkers.into_iter().zip(probs).enumerate().map(act).collect()
    };

    let mut stats = StepStats {
        step: pop.step_index,
        s,
        dt,
        mean_potential: snapshot.mean,
        offset: pop.energy_offset,
        population_size: size_before,
        deaths: 0,
        spawns: 0,
        hops: 0,
    };
    let mut best_hop: Option<(f64, P::Vertex)> = None;
    let mut next = Vec::with_capacity(size_before + size_before / 8);
    for outcome in outcomes {
        match outcome {
            Outcome::Stay(w) => next.push(w),
            Outcome::Hop(w, value) => {
                stats.hops += 1;
                if best_hop.as_ref().is_none_or(|(b, _)| value < *b) {
                    best_hop = Some((value, problem.vertex(&w)));
                }
                next.push(w);
            }
            Outcome::Die => stats.deaths += 1,
            Outcome::Spawn(w) => {
                stats.spawns += 1;
                next.push(w.clone());
                next.push(w);
            }
        }
    }
    pop.walkers = next;
    pop.step_index += 1;
    if pop.walkers.is_empty() {
        return Err(EngineError::Extinction { step: stats.step });
    }
    Ok(StepReport { stats, best_hop })
}

/// One step of the walker process at fixed `s`, `rates`, `dt`, using the
/// population's current offset. The mean potential is taken from the
/// population before any walker moves.
pub fn advance_population<P: SearchProblem>(
    problem: &P,
    pop: &mut Population<P::Walker>,
    s: f64,
    rates: Rates,
    dt: f64,
    seed: u64,
) -> Result<StepStats, EngineError> {
    if pop.is_empty() {
        return Err(EngineError::Extinction { step: pop.step_index });
    }
    let snapshot = Snapshot::take(problem, &pop.walkers, s);
    advance_with(problem, pop, &snapshot, s, rates, dt, seed, true).map(|r| r.stats)
}
