use nalgebra::{DMatrix, DVector};

use super::{same_shape, OrthogonalTransform, RegistrationError};

/// Singular values below this fraction of the largest are treated as zero.
const RANK_TOL: f64 = 1e-9;

/// Orthogonal `M` minimizing `|MX - Y|_F^2`.
///
/// With `Y X^T = U S V^T` the minimizer is `U V^T`. When `X` or `Y` is rank
/// deficient (the simplex clouds always are: they live in the hyperplane
/// orthogonal to the all-ones vector) the minimizer is not unique on the null
/// space. There we pick the completion closest to the identity, which keeps
/// the answer deterministic and returns exactly `P_pi` for permuted simplex
/// clouds. With `allow_reflections == false` the result is forced into
/// `SO(d)` by flipping the weakest direction.
pub fn solve_procrustes(
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    allow_reflections: bool,
) -> Result<OrthogonalTransform, RegistrationError> {
    same_shape(x, y)?;
    if x.ncols() == 0 {
        return Err(RegistrationError::Empty);
    }
    let d = x.nrows();
    let h = y * x.transpose();
    let (u, sigma, v) = svd(&h);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]).then(a.cmp(&b)));
    let u = DMatrix::from_fn(d, d, |r, c| u[(r, order[c])]);
    let v = DMatrix::from_fn(d, d, |r, c| v[(r, order[c])]);
    let sigma_max = sigma[order[0]];
    let rank = order
        .iter()
        .take_while(|&&i| sigma_max > 0.0 && sigma[i] > sigma_max * RANK_TOL)
        .count();

    let u1 = u.columns(0, rank);
    let v1 = v.columns(0, rank);
    let mut m = u1 * v1.transpose();

    let null = d - rank;
    let mut null_flip: Option<(DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)> = None;
    if null > 0 {
        let u0 = u.columns(rank, null).into_owned();
        let v0 = v.columns(rank, null).into_owned();
        // maximize tr(U0 Q V0^T) over orthogonal Q: Q = Z W^T with V0^T U0 = W S Z^T
        let b = v0.transpose() * &u0;
        let (w, _, z) = svd(&b);
        let q = &z * w.transpose();
        m += &u0 * &q * v0.transpose();
        null_flip = Some((u0, v0, q));
    }

    if !allow_reflections && m.clone().determinant() < 0.0 {
        match null_flip {
            Some((u0, v0, q)) => {
                // Flip one null-space direction; the residual is unchanged.
                let flip = u0.column(null - 1) * (q.row(null - 1) * v0.transpose());
                m -= flip * 2.0;
            }
            None => {
                let w = u.column(d - 1) * v.column(d - 1).transpose();
                m -= w * 2.0;
            }
        }
    }
    Ok(OrthogonalTransform::new_unchecked(m))
}

/// Full SVD `A = U diag(s) V^T` of a square matrix.
///
/// nalgebra's bidiagonal SVD loses accuracy on some of the rank-deficient
/// cross-covariances produced here (reconstruction errors near 1e-3), so the
/// decomposition is delegated to faer.
fn svd(a: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
    let (r, c) = a.shape();
    let f = faer::Mat::<f64>::from_fn(r, c, |i, j| a[(i, j)]);
    let dec = f.svd().expect("svd of a finite matrix");
    let (u, s, v) = (dec.U(), dec.S().column_vector(), dec.V());
    (
        DMatrix::from_fn(r, r, |i, j| u[(i, j)]),
        DVector::from_fn(r.min(c), |i, _| s[i]),
        DMatrix::from_fn(c, c, |i, j| v[(i, j)]),
    )
}
