//! Search graphs, potentials and annealing schedules.
//!
//! A search problem is the pair `(L, W)`: an implicit or explicit graph whose
//! combinatorial Laplacian drives diffusion, and a diagonal potential over its
//! vertices. The engine and the spectral oracle both build on these types.

mod graph;
mod potential;
pub(crate) mod schedule;

pub use graph::{hypercube_neighbors, AdjacencyGraph, GraphError, SearchGraph, VertexId};
pub use potential::{b_constant, hamming_potential, spiked_potential, Potential, DEFAULT_SPIKE};
pub use schedule::{Grid, Knot, Schedule, ScheduleError, ScheduleKind};

use rand::Rng;
use std::fmt::Debug;

/// A graph plus a diagonal potential, as seen by a population of walkers.
///
/// Each walker carries a `Walker` state: at minimum its vertex, plus any
/// per-walker cache the potential needs for incremental evaluation. Spawning
/// clones the state, so caches follow their walker.
pub trait SearchProblem: Sync {
    type Walker: Clone + Send + Sync;
    type Vertex: Clone + Ord + Debug + Send;

    /// Draws a walker uniformly over the vertex set.
    fn random_walker<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Walker;

    fn vertex(&self, walker: &Self::Walker) -> Self::Vertex;

    fn degree(&self, walker: &Self::Walker) -> usize;

    fn max_degree(&self) -> usize;

    /// Moves the walker to its `k`-th neighbor, `k < degree(walker)`.
    fn hop(&self, walker: &mut Self::Walker, k: usize);

    /// Diagonal term of `H(s)` at the walker's vertex.
    fn potential(&self, walker: &Self::Walker, s: f64) -> f64;

    /// The value being minimized. Defaults to the potential at `s = 1`.
    fn objective(&self, walker: &Self::Walker) -> f64 {
        self.potential(walker, 1.0)
    }
}

/// A [`SearchGraph`] with a closed-form or tabulated [`Potential`].
#[derive(Debug, Clone)]
pub struct PotentialProblem {
    graph: SearchGraph,
    potential: Potential,
}

impl PotentialProblem {
    pub fn new(graph: SearchGraph, potential: Potential) -> Result<Self, GraphError> {
        if let Potential::Table(values) = &potential {
            if values.len() as u128 != graph.num_vertices() {
                return Err(GraphError::TableSize {
                    expected: graph.num_vertices(),
                    found: values.len(),
                });
            }
        }
        if let SearchGraph::Hypercube { n } = graph {
            if n > 64 {
                return Err(GraphError::DimensionTooLarge(n));
            }
            if n == 0 {
                return Err(GraphError::Empty);
            }
        }
        Ok(Self { graph, potential })
    }

    pub fn graph(&self) -> &SearchGraph {
        &self.graph
    }

    pub fn potential_kind(&self) -> &Potential {
        &self.potential
    }
}

impl SearchProblem for PotentialProblem {
    type Walker = VertexId;
    type Vertex = VertexId;

    fn random_walker<R: Rng + ?Sized>(&self, rng: &mut R) -> VertexId {
        match self.graph {
            SearchGraph::Hypercube { n } => VertexId(rng.random::<u64>() & (u64::MAX >> (64 - n))),
            SearchGraph::Explicit(ref g) => VertexId(rng.random_range(0..g.num_vertices() as u64)),
        }
    }

    fn vertex(&self, walker: &VertexId) -> VertexId {
        *walker
    }

    fn degree(&self, walker: &VertexId) -> usize {
        self.graph.degree(*walker)
    }

    fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    fn hop(&self, walker: &mut VertexId, k: usize) {
        *walker = self.graph.neighbor(*walker, k);
    }

    fn potential(&self, walker: &VertexId, s: f64) -> f64 {
        self.potential.value(*walker, s)
    }
}
