use std::fmt;
use thiserror::Error;

/// A vertex of a search graph. On the hypercube, bit `k` is the value of
/// qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexId(pub u64);

impl VertexId {
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn flip(self, k: u32) -> VertexId {
        VertexId(self.0 ^ (1u64 << k))
    }

    pub fn bit(self, k: u32) -> bool {
        (self.0 >> k) & 1 == 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(u32, u32),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    OutOfRange(u32, u32, u32),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(u32, u32),
    #[error("graph has no vertices")]
    Empty,
    #[error("potential table has {found} entries, graph has {expected} vertices")]
    TableSize { expected: u128, found: usize },
    #[error("hypercube dimension {0} exceeds the 64-bit vertex encoding")]
    DimensionTooLarge(u32),
}

/// Undirected simple graph stored as sorted neighbor lists.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyGraph {
    neighbors: Vec<Vec<u32>>,
}

impl AdjacencyGraph {
    pub fn from_edges(num_vertices: u32, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        if num_vertices == 0 {
            return Err(GraphError::Empty);
        }
        let mut neighbors = vec![Vec::new(); num_vertices as usize];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            if u >= num_vertices || v >= num_vertices {
                return Err(GraphError::OutOfRange(u, v, num_vertices));
            }
            if neighbors[u as usize].contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            neighbors[u as usize].push(v);
            neighbors[v as usize].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self { neighbors })
    }

    pub fn num_vertices(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[v as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.neighbors.len()];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchGraph {
    Hypercube { n: u32 },
    Explicit(AdjacencyGraph),
}

impl SearchGraph {
    pub fn num_vertices(&self) -> u128 {
        match self {
            SearchGraph::Hypercube { n } => 1u128 << n,
            SearchGraph::Explicit(g) => g.num_vertices() as u128,
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        match self {
            SearchGraph::Hypercube { n } => *n as usize,
            SearchGraph::Explicit(g) => g.neighbors(v.0 as u32).len(),
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            SearchGraph::Hypercube { n } => *n as usize,
            SearchGraph::Explicit(g) => {
                (0..g.num_vertices() as u32).map(|v| g.neighbors(v).len()).max().unwrap_or(0)
            }
        }
    }

    /// The `k`-th neighbor of `v`. On the hypercube this flips bit `k`.
    pub fn neighbor(&self, v: VertexId, k: usize) -> VertexId {
        match self {
            SearchGraph::Hypercube { .. } => v.flip(k as u32),
            SearchGraph::Explicit(g) => VertexId(g.neighbors(v.0 as u32)[k] as u64),
        }
    }
}

/// All single-bit flips of `v` in the `n`-cube, lowest bit first.
pub fn hypercube_neighbors(v: VertexId, n: u32) -> Vec<VertexId> {
    (0..n).map(|k| v.flip(k)).collect()
}
