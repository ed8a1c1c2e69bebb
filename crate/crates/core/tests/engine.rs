use ssmc_core::engine::{run_observed, RunConfig};
use ssmc_core::model::{AdjacencyGraph, Grid, Potential, PotentialProblem, Schedule, SearchGraph};

/// Positive ground vector of `[[a + b w0, -a], [-a, a + b w1]]`, L1-normalized.
fn two_level_ground(a: f64, b: f64, w0: f64, w1: f64) -> [f64; 2] {
    let (d0, d1) = (a + b * w0, a + b * w1);
    let half = 0.5 * (d1 - d0);
    let e0 = 0.5 * (d0 + d1) - (half * half + a * a).sqrt();
    // (d0 - e0) x0 = a x1
    let (x0, x1) = (a, d0 - e0);
    [x0 / (x0 + x1), x1 / (x0 + x1)]
}

#[test]
fn two_vertex_distribution() {
    let (a, b, w) = (0.7, 1.3, vec![0.2, 1.5]);
    let exact = two_level_ground(a, b, w[0], w[1]);
    let g = AdjacencyGraph::from_edges(2, &[(0, 1)]).unwrap();
    let problem = PotentialProblem::new(SearchGraph::Explicit(g), Potential::Table(w)).unwrap();
    let schedule = Schedule::constant(a, b, 1500).unwrap().with_grid(Grid::Fixed(0.3)).unwrap();
    let cfg = RunConfig { walkers: 10_000, seed: 21, record_trace: false, ..RunConfig::default() };
    let mut counts = [0.0f64; 2];
    run_observed(&problem, &schedule, &cfg, |t, pop| {
        if t > 500 {
            for v in &pop.walkers {
                counts[v.0 as usize] += 1.0;
            }
        }
    })
    .unwrap();
    let total = counts[0] + counts[1];
    let tv = (counts[0] / total - exact[0]).abs();
    assert!(tv < 0.02, "tv {tv}, empirical {:?}, exact {exact:?}", [counts[0] / total, counts[1] / total]);
}

#[test]
fn terminal_population_matches_target_scale() {
    let g = AdjacencyGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let problem = PotentialProblem::new(SearchGraph::Explicit(g), Potential::Table(vec![0.0, 2.0, 1.0])).unwrap();
    let schedule = Schedule::constant(1.0, 1.0, 500).unwrap();
    let cfg = RunConfig { walkers: 4000, seed: 2, ..RunConfig::default() };
    let result = run_observed(&problem, &schedule, &cfg, |_, pop| {
        let ratio = pop.len() as f64 / 4000.0;
        assert!((0.8..1.25).contains(&ratio), "population drifted to {}", pop.len());
    })
    .unwrap();
    assert_eq!(result.trace.len(), 500);
}
