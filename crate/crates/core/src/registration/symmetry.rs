//! Symmetries of the embedded simplex.
//!
//! A vertex permutation `pi` acts on the centered simplex as the permutation
//! matrix `P_pi` (`P_pi e_i = e_pi(i)`), and `P_pi S_V = S_V P_pi`. Each
//! transposition `(a b)` is the reflection through the hyperplane orthogonal
//! to `e_a - e_b`, which contains every other simplex vertex and the midpoint
//! of `a` and `b`.

use nalgebra::DMatrix;

use super::{OrthogonalTransform, RegistrationError};
use crate::mapping::VertexMapping;

/// The permutation matrix `P_pi` with `P_pi[pi(i), i] = 1`.
pub fn orthogonal_from_vertex_permutation(
    pi: &VertexMapping,
    n: usize,
) -> Result<OrthogonalTransform, RegistrationError> {
    pi.check_permutation(n)?;
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(pi.image(i), i)] = 1.0;
    }
    Ok(OrthogonalTransform::new_unchecked(m))
}

/// Swap of two simplex vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transposition(pub usize, pub usize);

impl Transposition {
    /// Householder reflection `I - 2 v v^T / |v|^2` with `v = e_a - e_b`.
    pub fn reflection_matrix(&self, n: usize) -> DMatrix<f64> {
        let mut v = nalgebra::DVector::<f64>::zeros(n);
        v[self.0] += 1.0;
        v[self.1] -= 1.0;
        let scale = 2.0 / v.norm_squared();
        DMatrix::identity(n, n) - &v * v.transpose() * scale
    }
}

/// Splits `pi` into transpositions, listed in the order they are applied:
/// `P_pi = R_k ... R_2 R_1` for the returned `[t_1, ..., t_k]`.
///
/// A cycle `c0 -> c1 -> ... -> c_{l-1} -> c0` becomes `(c0 c1), (c0 c2), ...`.
pub fn reflection_decomposition(pi: &VertexMapping, n: usize) -> Result<Vec<Transposition>, RegistrationError> {
    pi.check_permutation(n)?;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut v = pi.image(start);
        while v != start {
            seen[v] = true;
            out.push(Transposition(start, v));
            v = pi.image(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::simplex_points;

    fn perm(v: &[usize]) -> VertexMapping {
        VertexMapping::permutation(v.to_vec()).unwrap()
    }

    fn compose(ts: &[Transposition], n: usize) -> DMatrix<f64> {
        ts.iter()
            .fold(DMatrix::identity(n, n), |acc, t| t.reflection_matrix(n) * acc)
    }

    #[test]
    fn identity_maps_to_identity() {
        let m = orthogonal_from_vertex_permutation(&VertexMapping::identity(4), 4).unwrap();
        assert_eq!(m.matrix(), &DMatrix::identity(4, 4));
        assert!(reflection_decomposition(&VertexMapping::identity(4), 4)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn transposition_swaps_simplex_columns() {
        let m = orthogonal_from_vertex_permutation(&perm(&[1, 0, 2]), 3).unwrap();
        let swap = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(m.matrix(), &swap);
        let s = simplex_points(3).unwrap();
        let mut swapped = s.clone();
        swapped.swap_columns(0, 1);
        assert_eq!(m.matrix() * &s, swapped);
    }

    #[test]
    fn determinant_is_sign() {
        for p in [[0, 1, 2, 3], [1, 0, 2, 3], [1, 2, 0, 3], [1, 2, 3, 0], [1, 0, 3, 2]] {
            let pi = perm(&p);
            let m = orthogonal_from_vertex_permutation(&pi, 4).unwrap();
            assert!((m.determinant() - pi.sign() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn three_cycle_needs_two_reflections() {
        let pi = perm(&[1, 2, 0]);
        let ts = reflection_decomposition(&pi, 3).unwrap();
        assert_eq!(ts, vec![Transposition(0, 1), Transposition(0, 2)]);
        let p = orthogonal_from_vertex_permutation(&pi, 3).unwrap();
        assert_eq!(&compose(&ts, 3), p.matrix());
    }

    #[test]
    fn reflection_is_a_swap() {
        let r = Transposition(0, 2).reflection_matrix(3);
        let p = orthogonal_from_vertex_permutation(&perm(&[2, 1, 0]), 3).unwrap();
        assert_eq!(&r, p.matrix());
    }

    #[test]
    fn invalid_permutation() {
        let bad = VertexMapping::identity(3);
        assert!(orthogonal_from_vertex_permutation(&bad, 4).is_err());
        assert!(reflection_decomposition(&bad, 2).is_err());
    }
}
