//! Graph isomorphism, automorphism, subgraph isomorphism and a graph
//! distance, all phrased as rigid point-set registration.
//!
//! A graph on `n` vertices becomes a cloud in `R^n`: the vertices are the
//! corners of the centered standard simplex and each edge contributes its
//! midpoint. Two graphs are isomorphic exactly when their clouds can be
//! registered with zero residual. The [`isomorphism`] module decides this
//! geometrically and ships a purely combinatorial oracle for cross-checking.

pub mod embedding;
pub mod enumerate;
pub mod graph;
pub mod io;
pub mod isomorphism;
pub mod mapping;
pub mod metrics;
pub mod registration;

pub use embedding::{embed, PointCloud};
pub use graph::{apply_vertex_permutation, Digraph, Graph, Hypergraph};
pub use io::{parse_graph, serialize_graph};
pub use mapping::VertexMapping;
pub use registration::ZERO_RESIDUAL;
