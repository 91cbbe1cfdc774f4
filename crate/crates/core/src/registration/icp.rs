use std::ops::Range;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::assignment::solve_cost_matrix;
use super::procrustes::solve_procrustes;
use super::{
    residual_of_transformed, same_shape, Correspondence, OrthogonalTransform, RegistrationError,
    RegistrationResult, ZERO_RESIDUAL,
};

/// Alternating (ICP-style) registration with seeded random restarts.
///
/// Every iteration solves the assignment for the current transform and then
/// the Procrustes problem for the new assignment; a step is only taken when
/// it does not increase the residual, so each restart descends monotonically.
/// Restart 0 starts from the identity, the others from random orthogonal
/// matrices. The search stops early once a restart reaches
/// [`ZERO_RESIDUAL`].
///
/// This is a heuristic. A residual at or below [`ZERO_RESIDUAL`] certifies an
/// exact match, but a larger residual does not rule one out.
#[derive(Debug, Clone)]
pub struct Registration {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub allow_reflections: bool,
    /// Column ranges that may only be matched among themselves. Empty means
    /// one block covering every column.
    pub blocks: Vec<Range<usize>>,
}

impl Default for Registration {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 200,
            tol: 1e-12,
            seed: 0,
            allow_reflections: true,
            blocks: Vec::new(),
        }
    }
}

/// Residual after each iteration of one restart, and where it ended.
#[derive(Debug, Clone)]
pub struct RestartTrace {
    pub residuals: Vec<f64>,
    pub result: RegistrationResult,
}

impl Registration {
    pub fn run(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<RegistrationResult, RegistrationError> {
        Ok(self.run_traced(x, y)?.0)
    }

    /// Like [`Registration::run`], also returning one trace per restart
    /// actually executed.
    pub fn run_traced(
        &self,
        x: &DMatrix<f64>,
        y: &DMatrix<f64>,
    ) -> Result<(RegistrationResult, Vec<RestartTrace>), RegistrationError> {
        same_shape(x, y)?;
        if self.restarts == 0 {
            return Err(RegistrationError::NoRestarts);
        }
        if x.ncols() == 0 {
            return Err(RegistrationError::Empty);
        }
        let blocks = self.checked_blocks(x.ncols())?;
        let d = x.nrows();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut traces: Vec<RestartTrace> = Vec::with_capacity(self.restarts);
        let mut best: Option<RegistrationResult> = None;

        for restart in 0..self.restarts {
            let start = if restart == 0 {
                OrthogonalTransform::identity(d)
            } else {
                random_orthogonal(d, &mut rng)
            };
            let trace = self.descend(x, y, &blocks, start)?;
            let better = best
                .as_ref()
                .is_none_or(|b| trace.result.residual < b.residual);
            if better {
                best = Some(trace.result.clone());
            }
            traces.push(trace);
            if best.as_ref().is_some_and(|b| b.residual <= ZERO_RESIDUAL) {
                break;
            }
        }
        Ok((best.expect("at least one restart ran"), traces))
    }

    fn checked_blocks(&self, k: usize) -> Result<Vec<Range<usize>>, RegistrationError> {
        if self.blocks.is_empty() {
            return Ok(vec![0..k]);
        }
        let mut covered = 0;
        for b in &self.blocks {
            if b.start != covered || b.end < b.start {
                return Err(RegistrationError::InvalidBlocks(k));
            }
            covered = b.end;
        }
        if covered != k {
            return Err(RegistrationError::InvalidBlocks(k));
        }
        Ok(self.blocks.iter().filter(|b| !b.is_empty()).cloned().collect())
    }

    fn descend(
        &self,
        x: &DMatrix<f64>,
        y: &DMatrix<f64>,
        blocks: &[Range<usize>],
        start: OrthogonalTransform,
    ) -> Result<RestartTrace, RegistrationError> {
        let mut transform = start;
        let mut mx = transform.matrix() * x;
        let mut corr = block_assignment(&mx, y, blocks);
        let mut current = residual_of_transformed(&mx, y, &corr);
        let mut residuals = Vec::new();

        for _ in 0..self.max_iters {
            let before = current;

            let candidate = solve_procrustes(&corr.gather(x), y, self.allow_reflections)?;
            let cand_mx = candidate.matrix() * x;
            let cand_res = residual_of_transformed(&cand_mx, y, &corr);
            if cand_res <= current {
                transform = candidate;
                mx = cand_mx;
                current = cand_res;
            }

            let cand_corr = block_assignment(&mx, y, blocks);
            let cand_res = residual_of_transformed(&mx, y, &cand_corr);
            if cand_res <= current {
                corr = cand_corr;
                current = cand_res;
            }

            residuals.push(current);
            if current <= ZERO_RESIDUAL || before - current < self.tol {
                break;
            }
        }

        Ok(RestartTrace {
            residuals,
            result: RegistrationResult {
                transform,
                correspondence: corr,
                residual: current,
            },
        })
    }
}

/// Exact assignment solved independently inside each column block.
fn block_assignment(mx: &DMatrix<f64>, y: &DMatrix<f64>, blocks: &[Range<usize>]) -> Correspondence {
    let mut perm = vec![0; y.ncols()];
    for block in blocks {
        let off = block.start;
        let k = block.len();
        let cost = DMatrix::from_fn(k, k, |j, i| (mx.column(off + i) - y.column(off + j)).norm_squared());
        let (local, _) = solve_cost_matrix(&cost);
        for (j, &i) in local.as_slice().iter().enumerate() {
            perm[off + j] = off + i;
        }
    }
    Correspondence::new_unchecked(perm)
}

/// Orthogonal factor of a seeded Gaussian matrix, with the signs of the QR
/// diagonal folded in so the distribution does not depend on the QR
/// convention.
pub(crate) fn random_orthogonal(d: usize, rng: &mut ChaCha8Rng) -> OrthogonalTransform {
    let g = DMatrix::from_fn(d, d, |_, _| StandardNormal.sample(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..d {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    OrthogonalTransform::new_unchecked(q)
}

/// Joint transform and correspondence estimate for `x` onto `y`.
pub fn register(
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    restarts: usize,
    max_iters: usize,
    tol: f64,
    seed: u64,
) -> Result<RegistrationResult, RegistrationError> {
    Registration {
        restarts,
        max_iters,
        tol,
        seed,
        ..Registration::default()
    }
    .run(x, y)
}

/// [`register`] with vertex/edge style column blocks: columns in
/// `blocks[b]` of `x` are only matched to columns in `blocks[b]` of `y`.
pub fn register_blocks(
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    blocks: Vec<Range<usize>>,
    restarts: usize,
    max_iters: usize,
    tol: f64,
    seed: u64,
) -> Result<RegistrationResult, RegistrationError> {
    Registration {
        restarts,
        max_iters,
        tol,
        seed,
        blocks,
        ..Registration::default()
    }
    .run(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_clouds_register_immediately() {
        let x = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 2.0, 0.0, 1.0, -3.0]);
        let (best, traces) = Registration::default().run_traced(&x, &x).unwrap();
        assert_eq!(traces.len(), 1);
        assert_eq!(traces[0].residuals.len(), 1);
        assert!(best.residual <= ZERO_RESIDUAL);
        assert_eq!(best.correspondence, Correspondence::identity(3));
    }

    #[test]
    fn random_orthogonal_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..8 {
            assert!(random_orthogonal(d, &mut rng).orthogonality_error() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let x = DMatrix::zeros(2, 3);
        assert_eq!(register(&x, &x, 0, 10, 1e-12, 0).unwrap_err(), RegistrationError::NoRestarts);
        assert!(matches!(
            register(&x, &DMatrix::zeros(2, 2), 1, 10, 1e-12, 0),
            Err(RegistrationError::ShapeMismatch { .. })
        ));
        assert_eq!(
            register_blocks(&x, &x, vec![0..1, 2..3], 1, 10, 1e-12, 0).unwrap_err(),
            RegistrationError::InvalidBlocks(3)
        );
    }

    #[test]
    fn blocks_are_respected() {
        let x = DMatrix::from_row_slice(1, 4, &[0.0, 1.0, 2.0, 3.0]);
        // Unconstrained, column 0 would be matched to column 2 of y.
        let y = DMatrix::from_row_slice(1, 4, &[2.0, 3.0, 0.0, 1.0]);
        let r = register_blocks(&x, &y, vec![0..2, 2..4], 1, 10, 1e-12, 0).unwrap();
        for (j, &i) in r.correspondence.as_slice().iter().enumerate() {
            assert_eq!(i / 2, j / 2);
        }
    }
}
