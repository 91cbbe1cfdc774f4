//! Point-cloud form of a graph.
//!
//! The `n` vertices sit on the centered standard simplex in `R^n`: column `i`
//! is `e_i - (1/n) 1`, so every pair of vertices is `sqrt(2)` apart and the
//! vertex columns sum to zero. Each edge is sampled once, at the midpoint of
//! its endpoints. Arcs add a second sample three quarters of the way toward
//! the head, and hyperedges are sampled at the centroid of their members.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::graph::{Digraph, Graph, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("cannot embed a graph with no vertices")]
    NoVertices,
    #[error("endpoint {vertex} out of range for {n} simplex vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
}

/// Vertex samples followed by edge samples, all in `R^d` with `d = |V|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    vertex_points: DMatrix<f64>,
    edge_points: DMatrix<f64>,
}

impl PointCloud {
    pub fn dim(&self) -> usize {
        self.vertex_points.nrows()
    }

    pub fn vertex_points(&self) -> &DMatrix<f64> {
        &self.vertex_points
    }

    pub fn edge_points(&self) -> &DMatrix<f64> {
        &self.edge_points
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_points.ncols()
    }

    pub fn edge_sample_count(&self) -> usize {
        self.edge_points.ncols()
    }

    /// `[vertex_points | edge_points]`.
    pub fn full(&self) -> DMatrix<f64> {
        let d = self.dim();
        let nv = self.vertex_count();
        let mut s = DMatrix::zeros(d, nv + self.edge_sample_count());
        s.columns_mut(0, nv).copy_from(&self.vertex_points);
        s.columns_mut(nv, self.edge_sample_count()).copy_from(&self.edge_points);
        s
    }
}

/// How arcs of a digraph are sampled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ArcSampling {
    /// Midpoint plus the point three quarters of the way to the head. The
    /// midpoints alone reproduce the embedding of the underlying undirected
    /// graph.
    #[default]
    MidpointAndThreeQuarter,
    /// Only the three-quarter point.
    ThreeQuarterOnly,
}

/// Centered standard simplex: `I_n` minus its column mean.
pub fn simplex_points(n: usize) -> Result<DMatrix<f64>, EmbedError> {
    if n == 0 {
        return Err(EmbedError::NoVertices);
    }
    let shift = 1.0 / n as f64;
    Ok(DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            1.0 - shift
        } else {
            -shift
        }
    }))
}

/// Midpoint of each edge's endpoints, in the order given.
pub fn edge_points(sv: &DMatrix<f64>, edges: &[(usize, usize)]) -> Result<DMatrix<f64>, EmbedError> {
    let n = sv.ncols();
    let mut out = DMatrix::zeros(sv.nrows(), edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        check(u, n)?;
        check(v, n)?;
        out.set_column(i, &((sv.column(u) + sv.column(v)) * 0.5));
    }
    Ok(out)
}

pub fn embed(g: &Graph) -> Result<PointCloud, EmbedError> {
    let vertex_points = simplex_points(g.vertex_count())?;
    let edge_points = edge_points(&vertex_points, g.edges())?;
    Ok(PointCloud {
        vertex_points,
        edge_points,
    })
}

/// Default arc sampling: all midpoints in arc order, then all
/// three-quarter points in arc order.
pub fn embed_digraph(g: &Digraph) -> Result<PointCloud, EmbedError> {
    embed_digraph_with(g, ArcSampling::default())
}

pub fn embed_digraph_with(g: &Digraph, sampling: ArcSampling) -> Result<PointCloud, EmbedError> {
    let vertex_points = simplex_points(g.vertex_count())?;
    let mids = edge_points(&vertex_points, g.arcs())?;
    let arcs = g.arcs();
    let mut quarters = DMatrix::zeros(vertex_points.nrows(), arcs.len());
    for (i, &(_, head)) in arcs.iter().enumerate() {
        quarters.set_column(i, &((mids.column(i) + vertex_points.column(head)) * 0.5));
    }
    let edge_points = match sampling {
        ArcSampling::ThreeQuarterOnly => quarters,
        ArcSampling::MidpointAndThreeQuarter => {
            let k = arcs.len();
            let mut both = DMatrix::zeros(vertex_points.nrows(), 2 * k);
            both.columns_mut(0, k).copy_from(&mids);
            both.columns_mut(k, k).copy_from(&quarters);
            both
        }
    };
    Ok(PointCloud {
        vertex_points,
        edge_points,
    })
}

/// One centroid per hyperedge.
pub fn embed_hypergraph(h: &Hypergraph) -> Result<PointCloud, EmbedError> {
    let n = h.vertex_count();
    let vertex_points = simplex_points(n)?;
    let mut edge_points = DMatrix::zeros(n, h.hyperedges().len());
    for (i, members) in h.hyperedges().iter().enumerate() {
        let mut sum = DVector::zeros(n);
        for &v in members {
            check(v, n)?;
            sum += vertex_points.column(v);
        }
        edge_points.set_column(i, &(sum / members.len() as f64));
    }
    Ok(PointCloud {
        vertex_points,
        edge_points,
    })
}

fn check(vertex: usize, n: usize) -> Result<(), EmbedError> {
    if vertex >= n {
        Err(EmbedError::EndpointOutOfRange { vertex, n })
    } else {
        Ok(())
    }
}
