//! Subgraph isomorphism: combinatorial search, geometric certificate.
//!
//! The pattern `g2` is embedded in the ambient space of the host `g1` by
//! padding its coordinates with zeros. A witness `f: V2 -> V1` selects the
//! host columns for `f(V2)` and for the images of the pattern edges. Those
//! columns are translated so the selected vertices are centered, after which
//! an orthogonal transform must carry them onto the pattern cloud exactly.

use nalgebra::DMatrix;

use super::{IsoError, IsoResult};
use crate::embedding::embed;
use crate::graph::Graph;
use crate::mapping::VertexMapping;
use crate::registration::{residual, solve_procrustes, Correspondence};

/// Registration residual of the host columns selected by the injection `f`
/// (translated to their vertex centroid) against the zero-padded pattern
/// cloud.
pub fn subgraph_certificate(g1: &Graph, g2: &Graph, f: &VertexMapping) -> Result<f64, IsoError> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if f.len() != n2 {
        return Err(crate::mapping::MappingError::SizeMismatch {
            len: f.len(),
            expected: n2,
        }
        .into());
    }
    VertexMapping::injection(f.as_slice().to_vec(), n1)?;
    if n2 == 0 {
        return Ok(0.0);
    }
    let mut columns: Vec<usize> = f.as_slice().to_vec();
    for &(u, v) in g2.edges() {
        match g1.edge_index(f.image(u), f.image(v)) {
            Some(i) => columns.push(n1 + i),
            None => return Ok(f64::INFINITY),
        }
    }
    let s1 = embed(g1)?.full();
    let mut x = DMatrix::from_fn(n1, columns.len(), |r, c| s1[(r, columns[c])]);
    let centroid = x.columns(0, n2).column_mean();
    for mut col in x.column_iter_mut() {
        col -= &centroid;
    }

    let s2 = embed(g2)?.full();
    let mut y = DMatrix::zeros(n1, s2.ncols());
    y.rows_mut(0, n2).copy_from(&s2);

    let m = solve_procrustes(&x, &y, true).expect("shapes agree by construction");
    Ok(residual(&m, &x, &y, &Correspondence::identity(x.ncols())).expect("shapes agree by construction"))
}

pub(super) fn search(g1: &Graph, g2: &Graph, tol: f64) -> IsoResult {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if n2 > n1 || g2.edge_count() > g1.edge_count() {
        return IsoResult::reject(f64::INFINITY);
    }
    if n2 == 0 {
        return IsoResult::accept(VertexMapping::identity(0), 0.0);
    }
    let mut earlier_neighbors = vec![Vec::new(); n2];
    for &(u, v) in g2.edges() {
        earlier_neighbors[v].push(u);
    }
    let mut s = Search {
        g1,
        g2,
        tol,
        deg1: g1.degrees(),
        deg2: g2.degrees(),
        earlier_neighbors,
        f: Vec::with_capacity(n2),
        used: vec![false; n1],
        best: f64::INFINITY,
        witness: None,
    };
    s.extend();
    match s.witness {
        Some((w, r)) => IsoResult::accept(w, r),
        None => IsoResult::reject(s.best),
    }
}

struct Search<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    tol: f64,
    deg1: Vec<usize>,
    deg2: Vec<usize>,
    earlier_neighbors: Vec<Vec<usize>>,
    f: Vec<usize>,
    used: Vec<bool>,
    best: f64,
    witness: Option<(VertexMapping, f64)>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let v = self.f.len();
        if v == self.deg2.len() {
            let f = VertexMapping::from_vec_unchecked(self.f.clone());
            let r = subgraph_certificate(self.g1, self.g2, &f).expect("valid injection");
            self.best = self.best.min(r);
            if r <= self.tol {
                self.witness = Some((f, r));
                return true;
            }
            return false;
        }
        for w in 0..self.used.len() {
            if self.used[w] || self.deg2[v] > self.deg1[w] {
                continue;
            }
            if !self.earlier_neighbors[v].iter().all(|&u| self.g1.has_edge(self.f[u], w)) {
                continue;
            }
            self.used[w] = true;
            self.f.push(w);
            let stop = self.extend();
            self.f.pop();
            self.used[w] = false;
            if stop {
                return true;
            }
        }
        false
    }
}
