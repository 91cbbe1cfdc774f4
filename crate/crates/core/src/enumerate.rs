//! Small-graph enumeration and seeded sampling, used by the exhaustive
//! checks and by telomorphism.

use std::collections::HashMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::graph::Graph;
use crate::isomorphism::oracle_is_isomorphic;
use crate::mapping::VertexMapping;

/// Vertex pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Number of `k`-subsets of an `n`-set, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Every labeled graph on `n` vertices with exactly `m` edges, in
/// lexicographic order of edge lists.
pub fn graphs_with_edges(n: usize, m: usize) -> impl Iterator<Item = Graph> {
    let pairs = vertex_pairs(n);
    let total = pairs.len();
    let mut idx: Option<Vec<usize>> = (m <= total).then(|| (0..m).collect());
    std::iter::from_fn(move || {
        let cur = idx.as_ref()?.clone();
        let g = Graph::new(n, cur.iter().map(|&i| pairs[i])).expect("distinct pairs");
        // advance to the next combination
        let next = idx.as_mut().expect("checked above");
        let mut i = m;
        loop {
            if i == 0 {
                idx = None;
                break;
            }
            i -= 1;
            if next[i] < total - m + i {
                next[i] += 1;
                for j in i + 1..m {
                    next[j] = next[j - 1] + 1;
                }
                break;
            }
        }
        Some(g)
    })
}

/// Every labeled graph on `n` vertices, grouped by edge count.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let max = n * n.saturating_sub(1) / 2;
    (0..=max).flat_map(move |m| graphs_with_edges(n, m))
}

/// One representative per isomorphism class, keeping the first member seen.
pub fn isomorphism_classes(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    let mut buckets: HashMap<(usize, usize, Vec<usize>), Vec<usize>> = HashMap::new();
    for g in graphs {
        let mut degs = g.degrees();
        degs.sort_unstable();
        let bucket = buckets
            .entry((g.vertex_count(), g.edge_count(), degs))
            .or_default();
        if bucket.iter().all(|&r| !oracle_is_isomorphic(&reps[r], &g).decision) {
            bucket.push(reps.len());
            reps.push(g);
        }
    }
    reps
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> VertexMapping {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    VertexMapping::from_vec_unchecked(map)
}

/// Uniform labeled graph with `n` vertices and `m` edges.
pub fn random_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let pairs = vertex_pairs(n);
    assert!(m <= pairs.len(), "too many edges for {n} vertices");
    let chosen = pairs.choose_multiple(rng, m).copied();
    Graph::new(n, chosen).expect("distinct pairs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_labeled_graphs() {
        assert_eq!(all_graphs(0).count(), 1);
        assert_eq!(all_graphs(1).count(), 1);
        assert_eq!(all_graphs(3).count(), 8);
        assert_eq!(all_graphs(4).count(), 64);
        assert_eq!(graphs_with_edges(4, 4).count(), 15);
        assert_eq!(graphs_with_edges(3, 4).count(), 0);
    }

    #[test]
    fn lexicographic_order() {
        let lists: Vec<_> = graphs_with_edges(4, 2).map(|g| g.edges().to_vec()).collect();
        let mut sorted = lists.clone();
        sorted.sort();
        assert_eq!(lists, sorted);
        assert_eq!(lists[0], vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn counts_unlabeled_graphs() {
        // OEIS A000088
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            assert_eq!(isomorphism_classes(all_graphs(n)).len(), expected);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(21, 10), 352_716);
        assert_eq!(binomial(3, 5), 0);
    }
}
