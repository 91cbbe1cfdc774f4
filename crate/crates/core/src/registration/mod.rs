//! Rigid registration of point clouds stored as `d x k` column matrices.
//!
//! Three problems, from easiest to hardest:
//! - transform unknown, correspondence known: [`solve_procrustes`]
//! - transform known, correspondence unknown: [`solve_assignment`]
//! - both unknown: [`register`], alternating the two exact sub-solvers.

mod assignment;
mod icp;
mod procrustes;
mod symmetry;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::mapping::MappingError;

pub use assignment::{solve_assignment, solve_cost_matrix};
pub use icp::{register, register_blocks, Registration, RestartTrace};
pub use procrustes::solve_procrustes;
pub use symmetry::{orthogonal_from_vertex_permutation, reflection_decomposition, Transposition};

/// Residual at or below which two clouds count as exactly registered.
pub const ZERO_RESIDUAL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegistrationError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("point clouds have no columns")]
    Empty,
    #[error("at least one restart is required")]
    NoRestarts,
    #[error("matrix is not orthogonal (|M^T M - I|_F = {0:e})")]
    NotOrthogonal(f64),
    #[error("correspondence is not a permutation of 0..{0}")]
    InvalidCorrespondence(usize),
    #[error("column blocks do not partition 0..{0}")]
    InvalidBlocks(usize),
    #[error(transparent)]
    Mapping(#[from] MappingError),
}

pub(crate) fn same_shape(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<(), RegistrationError> {
    if x.shape() != y.shape() {
        return Err(RegistrationError::ShapeMismatch {
            left: x.shape(),
            right: y.shape(),
        });
    }
    Ok(())
}

/// A `d x d` matrix with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalTransform {
    m: DMatrix<f64>,
}

impl OrthogonalTransform {
    /// Accepts `m` when `|M^T M - I|_F < 1e-9`.
    pub fn new(m: DMatrix<f64>) -> Result<Self, RegistrationError> {
        let err = orthogonality_error(&m);
        if !m.is_square() || !(err < 1e-9) {
            return Err(RegistrationError::NotOrthogonal(err));
        }
        Ok(Self { m })
    }

    pub(crate) fn new_unchecked(m: DMatrix<f64>) -> Self {
        Self { m }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            m: DMatrix::identity(d, d),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn determinant(&self) -> f64 {
        self.m.clone().determinant()
    }

    pub fn orthogonality_error(&self) -> f64 {
        orthogonality_error(&self.m)
    }
}

fn orthogonality_error(m: &DMatrix<f64>) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    (m.transpose() * m - DMatrix::identity(m.nrows(), m.nrows())).norm()
}

/// Column matching between two clouds: `perm[j]` is the column of `X`
/// matched to column `j` of `Y`. As a permutation matrix `P` this is the
/// pairing in `|MX - YP|`, written column-wise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    perm: Vec<usize>,
}

impl Correspondence {
    pub fn new(perm: Vec<usize>) -> Result<Self, RegistrationError> {
        let k = perm.len();
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(RegistrationError::InvalidCorrespondence(k));
            }
        }
        Ok(Self { perm })
    }

    pub(crate) fn new_unchecked(perm: Vec<usize>) -> Self {
        Self { perm }
    }

    pub fn identity(k: usize) -> Self {
        Self {
            perm: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// Columns of `x` reordered so that column `j` is `x[:, perm[j]]`.
    pub fn gather(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(x.nrows(), self.perm.len(), |r, j| x[(r, self.perm[j])])
    }
}

/// `sum_j |M x[:, perm[j]] - y[:, j]|^2`.
pub fn residual(
    m: &OrthogonalTransform,
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    corr: &Correspondence,
) -> Result<f64, RegistrationError> {
    same_shape(x, y)?;
    if corr.len() != x.ncols() {
        return Err(RegistrationError::InvalidCorrespondence(x.ncols()));
    }
    if m.dim() != x.nrows() {
        return Err(RegistrationError::ShapeMismatch {
            left: m.matrix().shape(),
            right: x.shape(),
        });
    }
    let mx = m.matrix() * x;
    Ok(residual_of_transformed(&mx, y, corr))
}

pub(crate) fn residual_of_transformed(mx: &DMatrix<f64>, y: &DMatrix<f64>, corr: &Correspondence) -> f64 {
    corr.perm
        .iter()
        .enumerate()
        .map(|(j, &i)| (mx.column(i) - y.column(j)).norm_squared())
        .sum()
}

/// Outcome of a registration: the transform, the matching and
/// `|MX - YP|_F^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegistrationResult {
    pub transform: OrthogonalTransform,
    pub correspondence: Correspondence,
    pub residual: f64,
}

impl RegistrationResult {
    /// Recomputes the residual from the stored transform and matching.
    pub fn recompute_residual(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<f64, RegistrationError> {
        residual(&self.transform, x, y, &self.correspondence)
    }
}
