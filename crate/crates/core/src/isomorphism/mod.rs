//! Exact isomorphism, automorphism and subgraph decisions on point clouds.
//!
//! Because every valid transform of the simplex is a permutation matrix and
//! the edge order is fixed by the vertex order, the whole search space of
//! `(M, P)` pairs is indexed by vertex bijections `pi`. For each candidate we
//! build `M = P_pi`, the block correspondence `P` it induces (vertices to
//! vertices, edge midpoints to edge midpoints) and accept when
//! `|M S1 - S2 P|_F^2 <= tol`.
//!
//! [`oracle_is_isomorphic`] answers the same question from adjacency
//! matrices alone and is kept independent of the geometric path.

mod oracle;
mod search;
mod subgraph;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::embedding::{embed, EmbedError};
use crate::graph::Graph;
use crate::mapping::{MappingError, VertexMapping};
use crate::registration::{
    orthogonal_from_vertex_permutation, residual, solve_cost_matrix, Correspondence, OrthogonalTransform,
    ZERO_RESIDUAL,
};

pub use oracle::oracle_is_isomorphic;
pub use subgraph::subgraph_certificate;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsoError {
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("graphs differ in size: ({n1}, {m1}) vs ({n2}, {m2})")]
    SizeMismatch { n1: usize, m1: usize, n2: usize, m2: usize },
    #[error(
        "combinatorial check says {combinatorial} but geometric residual {residual:e} says {geometric}"
    )]
    Inconsistent {
        combinatorial: bool,
        geometric: bool,
        residual: f64,
    },
}

/// Outcome of an isomorphism-type decision.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoResult {
    pub decision: bool,
    /// Present exactly when `decision` is true.
    pub witness: Option<VertexMapping>,
    /// Residual of the witness, or the smallest residual seen when no
    /// candidate was accepted (infinite if none was evaluated).
    pub residual: f64,
}

impl IsoResult {
    pub(crate) fn accept(witness: VertexMapping, residual: f64) -> Self {
        Self {
            decision: true,
            witness: Some(witness),
            residual,
        }
    }

    pub(crate) fn reject(residual: f64) -> Self {
        Self {
            decision: false,
            witness: None,
            residual,
        }
    }
}

/// Maps each edge of `e1` through `pi` and locates it in `e2`.
///
/// The result follows the [`Correspondence`] convention: entry `j` is the
/// index in `e1` of the edge landing on `e2[j]`. `None` when some image edge
/// is missing from `e2`, i.e. `pi` does not preserve edges. Both lists must be
/// canonical (endpoints ordered, sorted).
pub fn induced_edge_permutation(
    pi: &VertexMapping,
    e1: &[(usize, usize)],
    e2: &[(usize, usize)],
) -> Option<Correspondence> {
    if e1.len() != e2.len() {
        return None;
    }
    let mut perm = vec![usize::MAX; e2.len()];
    for (i, &(u, v)) in e1.iter().enumerate() {
        let (a, b) = (pi.image(u), pi.image(v));
        let j = e2.binary_search(&(a.min(b), a.max(b))).ok()?;
        if perm[j] != usize::MAX {
            return None;
        }
        perm[j] = i;
    }
    Some(Correspondence::new_unchecked(perm))
}

/// Full column correspondence for `[S_V | S_E]` clouds: vertex column `j` of
/// the second cloud is matched with `pi^-1(j)`, edge columns by `edges`.
pub fn block_correspondence(pi: &VertexMapping, edges: &Correspondence) -> Correspondence {
    let n = pi.len();
    let inv = pi.inverse();
    let perm = inv
        .as_slice()
        .iter()
        .copied()
        .chain(edges.as_slice().iter().map(|&i| n + i))
        .collect();
    Correspondence::new_unchecked(perm)
}

/// Two embedded graphs with the same vertex and edge counts.
#[derive(Debug, Clone)]
pub struct CloudPair<'a> {
    pub g1: &'a Graph,
    pub g2: &'a Graph,
    pub s1: DMatrix<f64>,
    pub s2: DMatrix<f64>,
}

impl<'a> CloudPair<'a> {
    pub fn new(g1: &'a Graph, g2: &'a Graph) -> Result<Self, IsoError> {
        let (n1, m1, n2, m2) = (g1.vertex_count(), g1.edge_count(), g2.vertex_count(), g2.edge_count());
        if n1 != n2 || m1 != m2 {
            return Err(IsoError::SizeMismatch { n1, m1, n2, m2 });
        }
        let s1 = embed(g1)?.full();
        let s2 = embed(g2)?.full();
        Ok(Self { g1, g2, s1, s2 })
    }

    pub fn vertex_count(&self) -> usize {
        self.g1.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.g1.edge_count()
    }

    /// Smallest residual `|P_pi S1 - S2 P|_F^2` over block correspondences
    /// `P` whose vertex block is `pi`.
    ///
    /// When `pi` preserves edges the induced edge matching is used (residual
    /// zero up to rounding). Otherwise the edge block is matched by exact
    /// minimum-cost assignment between the mapped midpoints of `g1` and the
    /// midpoints of `g2`.
    pub fn mapping_residual(&self, pi: &VertexMapping) -> Result<(f64, Correspondence), IsoError> {
        let n = self.vertex_count();
        let m = self.edge_count();
        let transform = orthogonal_from_vertex_permutation(pi, n).map_err(|e| match e {
            crate::registration::RegistrationError::Mapping(me) => IsoError::Mapping(me),
            other => unreachable!("permutation matrix construction: {other}"),
        })?;
        let edges = match induced_edge_permutation(pi, self.g1.edges(), self.g2.edges()) {
            Some(c) => c,
            None => self.best_edge_matching(&transform),
        };
        let corr = block_correspondence(pi, &edges);
        let r = residual(&transform, &self.s1, &self.s2, &corr).expect("shapes agree by construction");
        debug_assert_eq!(corr.len(), n + m);
        Ok((r, corr))
    }

    fn best_edge_matching(&self, transform: &OrthogonalTransform) -> Correspondence {
        let n = self.vertex_count();
        let m = self.edge_count();
        let mapped = transform.matrix() * self.s1.columns(n, m);
        let cost = DMatrix::from_fn(m, m, |j, i| (mapped.column(i) - self.s2.column(n + j)).norm_squared());
        solve_cost_matrix(&cost).0
    }
}

/// Geometric decision procedures with a configurable zero-residual threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matcher {
    pub tol: f64,
}

impl Default for Matcher {
    fn default() -> Self {
        Self { tol: ZERO_RESIDUAL }
    }
}

impl Matcher {
    pub fn new(tol: f64) -> Self {
        Self { tol }
    }

    /// First (lexicographically smallest) vertex bijection whose registration
    /// residual is within tolerance.
    pub fn is_isomorphic(&self, g1: &Graph, g2: &Graph) -> IsoResult {
        let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
        if n1 != n2 || g1.edge_count() != g2.edge_count() {
            return IsoResult::reject(f64::INFINITY);
        }
        if g1.edge_count() == 0 {
            return IsoResult::accept(VertexMapping::identity(n1), 0.0);
        }
        let pair = CloudPair::new(g1, g2).expect("sizes checked above");
        let mut outcome = search::Outcome::first();
        search::run(&pair, self.tol, &mut outcome);
        outcome.into_result()
    }

    /// Number of vertex bijections `pi` with `P_pi S P^T = S` within
    /// tolerance, i.e. the order of the automorphism group.
    pub fn count_automorphisms(&self, g: &Graph) -> u64 {
        if g.edge_count() == 0 {
            return (1..=g.vertex_count() as u64).product();
        }
        let pair = CloudPair::new(g, g).expect("same graph");
        let mut outcome = search::Outcome::count();
        search::run(&pair, self.tol, &mut outcome);
        outcome.count
    }

    /// True when some automorphism other than the identity exists. Stops at
    /// the first one found.
    pub fn has_nontrivial_automorphism(&self, g: &Graph) -> bool {
        if g.edge_count() == 0 {
            return g.vertex_count() > 1;
        }
        let pair = CloudPair::new(g, g).expect("same graph");
        let mut outcome = search::Outcome::first_nontrivial();
        search::run(&pair, self.tol, &mut outcome);
        outcome.witness.is_some()
    }

    /// Checks `pi` both combinatorially (`pi(g1) == g2`) and geometrically.
    /// The two verdicts must agree; a disagreement is reported as
    /// [`IsoError::Inconsistent`].
    pub fn verify_isomorphism(&self, g1: &Graph, g2: &Graph, pi: &VertexMapping) -> Result<bool, IsoError> {
        pi.check_permutation(g1.vertex_count())?;
        if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
            return Ok(false);
        }
        let combinatorial = g1.permuted(pi).expect("checked permutation") == *g2;
        if g1.vertex_count() == 0 {
            return Ok(combinatorial);
        }
        let pair = CloudPair::new(g1, g2)?;
        let (residual, _) = pair.mapping_residual(pi)?;
        let geometric = residual <= self.tol;
        if combinatorial != geometric {
            return Err(IsoError::Inconsistent {
                combinatorial,
                geometric,
                residual,
            });
        }
        Ok(combinatorial)
    }

    /// Does `g1` contain a (not necessarily induced) subgraph isomorphic to
    /// `g2`? Every witness must also pass [`subgraph_certificate`].
    pub fn is_subgraph_isomorphic(&self, g1: &Graph, g2: &Graph) -> IsoResult {
        subgraph::search(g1, g2, self.tol)
    }
}

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> IsoResult {
    Matcher::default().is_isomorphic(g1, g2)
}

pub fn count_automorphisms(g: &Graph) -> u64 {
    Matcher::default().count_automorphisms(g)
}

pub fn has_nontrivial_automorphism(g: &Graph) -> bool {
    Matcher::default().has_nontrivial_automorphism(g)
}

pub fn verify_isomorphism(g1: &Graph, g2: &Graph, pi: &VertexMapping) -> Result<bool, IsoError> {
    Matcher::default().verify_isomorphism(g1, g2, pi)
}

pub fn is_subgraph_isomorphic(g1: &Graph, g2: &Graph) -> IsoResult {
    Matcher::default().is_subgraph_isomorphic(g1, g2)
}
