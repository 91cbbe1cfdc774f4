//! Simple graphs, digraphs and hypergraphs with canonical edge storage.
//!
//! Vertices are the integers `0..n`. Every constructor canonicalizes its
//! edge list (endpoint order, then lexicographic sort) and rejects loops,
//! duplicates and out-of-range endpoints, so two values compare equal exactly
//! when they describe the same labeled structure. The canonical order is what
//! fixes the column order of edge samples in the point-cloud embedding.

use thiserror::Error;

use crate::mapping::{MappingError, VertexMapping};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("hyperedge {0:?} has fewer than two distinct vertices")]
    HyperedgeTooSmall(Vec<usize>),
    #[error(transparent)]
    Mapping(#[from] MappingError),
}

/// Undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, storing each edge as `(min, max)` in sorted order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            check_endpoint(u, n)?;
            check_endpoint(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(vec![w[0].0, w[0].1]));
        }
        Ok(Self { n, edges: canon })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self { n, edges }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Self { n, edges }
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are distinct")
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes `i - (i+5)`.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::new(10, outer.chain(spokes).chain(inner)).expect("petersen edges are distinct")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `u < v`, sorted ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Position of the edge `{u, v}` in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return None;
        }
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Dense symmetric 0/1 adjacency matrix, row-major.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    pub fn complement(&self) -> Self {
        let adj = self.adjacency();
        let edges = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !adj[u][v])
            .collect();
        Self { n: self.n, edges }
    }

    /// Relabels every vertex `v` as `pi(v)` and re-canonicalizes the edge list.
    pub fn permuted(&self, pi: &VertexMapping) -> Result<Self, GraphError> {
        pi.check_permutation(self.n)?;
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (pi.image(u), pi.image(v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Ok(Self { n: self.n, edges })
    }
}

/// Relabels `g` by the vertex bijection `pi`.
pub fn apply_vertex_permutation(g: &Graph, pi: &VertexMapping) -> Result<Graph, GraphError> {
    g.permuted(pi)
}

/// Directed graph without loops or parallel arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut arcs: Vec<_> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            check_endpoint(u, n)?;
            check_endpoint(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(vec![w[0].0, w[0].1]));
        }
        Ok(Self { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Sorted `(tail, head)` pairs.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// Hypergraph whose edges are vertex subsets of size at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Members of each hyperedge are sorted and deduplicated; a subset that
    /// appears twice in the list is an error.
    pub fn new(n: usize, hyperedges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self, GraphError> {
        let mut canon = Vec::new();
        for mut members in hyperedges {
            for &v in &members {
                check_endpoint(v, n)?;
            }
            members.sort_unstable();
            members.dedup();
            if members.len() < 2 {
                return Err(GraphError::HyperedgeTooSmall(members));
            }
            canon.push(members);
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].clone()));
        }
        Ok(Self { n, hyperedges: canon })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }
}

fn check_endpoint(vertex: usize, n: usize) -> Result<(), GraphError> {
    if vertex >= n {
        Err(GraphError::EndpointOutOfRange { vertex, n })
    } else {
        Ok(())
    }
}
