//! Adjacency-matrix ground truth: `g1 ~ g2` iff `A1 = P^T A2 P` for some
//! permutation matrix `P`. No embedding, no tolerances.

use super::IsoResult;
use crate::graph::Graph;
use crate::mapping::VertexMapping;

/// Plain backtracking over bijections, checking `A1[u][v] == A2[pi u][pi v]`
/// for every pair of assigned vertices. Returns the lexicographically
/// smallest witness.
pub fn oracle_is_isomorphic(g1: &Graph, g2: &Graph) -> IsoResult {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return IsoResult::reject(f64::INFINITY);
    }
    let a1 = g1.adjacency();
    let a2 = g2.adjacency();
    let mut pi = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(&a1, &a2, &mut pi, &mut used) {
        IsoResult::accept(VertexMapping::from_vec_unchecked(pi), 0.0)
    } else {
        IsoResult::reject(f64::INFINITY)
    }
}

fn extend(a1: &[Vec<bool>], a2: &[Vec<bool>], pi: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let v = pi.len();
    if v == a1.len() {
        return true;
    }
    for w in 0..a1.len() {
        if used[w] {
            continue;
        }
        if (0..v).any(|u| a1[u][v] != a2[pi[u]][w]) {
            continue;
        }
        used[w] = true;
        pi.push(w);
        if extend(a1, a2, pi, used) {
            return true;
        }
        pi.pop();
        used[w] = false;
    }
    false
}
