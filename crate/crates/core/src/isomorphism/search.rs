//! Backtracking over vertex bijections.
//!
//! Vertices of the first graph are assigned in index order and candidate
//! images are tried in increasing order, so complete candidates are visited
//! lexicographically. A partial assignment is abandoned when a degree differs
//! or when the midpoint of an already-mapped edge, carried by `P_pi`, is not
//! within tolerance of any edge sample of the second cloud. Complete
//! candidates are accepted on their full registration residual.

use nalgebra::{DMatrix, DVector};

use super::{CloudPair, IsoResult};
use crate::mapping::VertexMapping;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    First,
    FirstNontrivial,
    Count,
}

#[derive(Debug)]
pub(super) struct Outcome {
    mode: Mode,
    pub witness: Option<VertexMapping>,
    pub best_residual: f64,
    pub witness_residual: f64,
    pub count: u64,
}

impl Outcome {
    fn new(mode: Mode) -> Self {
        Self {
            mode,
            witness: None,
            best_residual: f64::INFINITY,
            witness_residual: f64::INFINITY,
            count: 0,
        }
    }

    pub fn first() -> Self {
        Self::new(Mode::First)
    }

    pub fn first_nontrivial() -> Self {
        Self::new(Mode::FirstNontrivial)
    }

    pub fn count() -> Self {
        Self::new(Mode::Count)
    }

    pub fn into_result(self) -> IsoResult {
        match self.witness {
            Some(w) => IsoResult::accept(w, self.witness_residual),
            None => IsoResult::reject(self.best_residual),
        }
    }

    /// Records an accepted candidate; returns true when the search may stop.
    fn accept(&mut self, pi: &[usize], residual: f64) -> bool {
        match self.mode {
            Mode::Count => {
                self.count += 1;
                false
            }
            Mode::FirstNontrivial if pi.iter().enumerate().all(|(i, &v)| i == v) => false,
            Mode::First | Mode::FirstNontrivial => {
                self.witness = Some(VertexMapping::from_vec_unchecked(pi.to_vec()));
                self.witness_residual = residual;
                true
            }
        }
    }
}

struct State<'p, 'g> {
    pair: &'p CloudPair<'g>,
    tol: f64,
    deg1: Vec<usize>,
    deg2: Vec<usize>,
    /// Neighbors of `v` in the first graph with a smaller index.
    earlier_neighbors: Vec<Vec<usize>>,
    vertex2: DMatrix<f64>,
    edges2: DMatrix<f64>,
    pi: Vec<usize>,
    used: Vec<bool>,
}

pub(super) fn run(pair: &CloudPair<'_>, tol: f64, outcome: &mut Outcome) {
    let n = pair.vertex_count();
    let mut earlier_neighbors = vec![Vec::new(); n];
    for &(u, v) in pair.g1.edges() {
        earlier_neighbors[v].push(u);
    }
    let mut state = State {
        pair,
        tol,
        deg1: pair.g1.degrees(),
        deg2: pair.g2.degrees(),
        earlier_neighbors,
        vertex2: pair.s2.columns(0, n).into_owned(),
        edges2: pair.s2.columns(n, pair.edge_count()).into_owned(),
        pi: Vec::with_capacity(n),
        used: vec![false; n],
    };
    state.extend(outcome);
}

impl State<'_, '_> {
    fn extend(&mut self, outcome: &mut Outcome) -> bool {
        let v = self.pi.len();
        let n = self.used.len();
        if v == n {
            let pi = VertexMapping::from_vec_unchecked(self.pi.clone());
            let (residual, _) = self.pair.mapping_residual(&pi).expect("complete bijection");
            outcome.best_residual = outcome.best_residual.min(residual);
            return residual <= self.tol && outcome.accept(&self.pi, residual);
        }
        for w in 0..n {
            if self.used[w] || self.deg1[v] != self.deg2[w] || !self.edges_land(v, w) {
                continue;
            }
            self.used[w] = true;
            self.pi.push(w);
            let stop = self.extend(outcome);
            self.pi.pop();
            self.used[w] = false;
            if stop {
                return true;
            }
        }
        false
    }

    /// Every edge `(u, v)` with `u` already mapped must land on an edge
    /// sample of the second cloud once `v` is sent to `w`.
    fn edges_land(&self, v: usize, w: usize) -> bool {
        self.earlier_neighbors[v].iter().all(|&u| {
            let image: DVector<f64> = (self.vertex2.column(self.pi[u]) + self.vertex2.column(w)) * 0.5;
            self.edges2
                .column_iter()
                .any(|e| (e - &image).norm_squared() <= self.tol)
        })
    }
}
