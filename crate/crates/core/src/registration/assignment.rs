use nalgebra::DMatrix;

use super::{same_shape, Correspondence, RegistrationError};

/// Permutation minimizing `sum_j |x_t[:, perm[j]] - y[:, j]|^2`.
pub fn solve_assignment(x_transformed: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<Correspondence, RegistrationError> {
    same_shape(x_transformed, y)?;
    let k = y.ncols();
    let cost = DMatrix::from_fn(k, k, |j, i| (x_transformed.column(i) - y.column(j)).norm_squared());
    Ok(solve_cost_matrix(&cost).0)
}

/// Exact minimum-cost perfect matching on a square cost matrix.
///
/// Row `j` is assigned column `perm[j]`. Hungarian method with potentials
/// (shortest augmenting paths), `O(k^3)`. Exact ties go to the lowest column
/// index. Returns the matching and its total cost.
pub fn solve_cost_matrix(cost: &DMatrix<f64>) -> (Correspondence, f64) {
    assert!(cost.is_square(), "cost matrix must be square");
    let k = cost.nrows();
    if k == 0 {
        return (Correspondence::identity(0), 0.0);
    }
    // 1-based internally; index 0 is the virtual start column.
    let mut u = vec![0.0; k + 1];
    let mut v = vec![0.0; k + 1];
    let mut row_of = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    let mut minv = vec![0.0; k + 1];
    let mut used = vec![false; k + 1];

    for row in 1..=k {
        row_of[0] = row;
        let mut col0 = 0;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[col0] = true;
            let r0 = row_of[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0;
            for col in 1..=k {
                if used[col] {
                    continue;
                }
                let reduced = cost[(r0 - 1, col - 1)] - u[r0] - v[col];
                if reduced < minv[col] {
                    minv[col] = reduced;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for col in 0..=k {
                if used[col] {
                    u[row_of[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
            if row_of[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            row_of[col0] = row_of[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut perm = vec![0; k];
    for col in 1..=k {
        perm[row_of[col] - 1] = col - 1;
    }
    let total = perm.iter().enumerate().map(|(r, &c)| cost[(r, c)]).sum();
    (Correspondence::new_unchecked(perm), total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(cost: &DMatrix<f64>) -> f64 {
        fn go(cost: &DMatrix<f64>, row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
            if row == cost.nrows() {
                *best = best.min(acc);
                return;
            }
            for c in 0..cost.ncols() {
                if !used[c] {
                    used[c] = true;
                    go(cost, row + 1, used, acc + cost[(row, c)], best);
                    used[c] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        go(cost, 0, &mut vec![false; cost.ncols()], 0.0, &mut best);
        best
    }

    #[test]
    fn cyclic_shift() {
        let x = DMatrix::from_row_slice(2, 3, &[0.0, 1.0, 5.0, 0.0, 2.0, -1.0]);
        // y[:, j] = x[:, (j + 1) % 3]
        let y = DMatrix::from_fn(2, 3, |r, j| x[(r, (j + 1) % 3)]);
        let corr = solve_assignment(&x, &y).unwrap();
        assert_eq!(corr.as_slice(), &[1, 2, 0]);
    }

    #[test]
    fn single_column() {
        let x = DMatrix::from_element(3, 1, 1.0);
        let y = DMatrix::from_element(3, 1, -1.0);
        assert_eq!(solve_assignment(&x, &y).unwrap().as_slice(), &[0]);
    }

    #[test]
    fn ties_prefer_lowest_index() {
        let cost = DMatrix::from_element(3, 3, 1.0);
        let (corr, total) = solve_cost_matrix(&cost);
        assert_eq!(corr.as_slice(), &[0, 1, 2]);
        assert_eq!(total, 3.0);
    }

    #[test]
    fn matches_brute_force_on_fixed_matrices() {
        let cases: [&[f64]; 3] = [
            &[4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0],
            &[1.0, 2.0, 3.0, 4.0, 2.0, 4.0, 6.0, 8.0, 3.0, 6.0, 9.0, 12.0, 4.0, 8.0, 12.0, 16.0],
            &[0.5, 0.5, 1.0, 0.0, 1.0, 0.5, 1.0, 0.5, 0.0],
        ];
        for data in cases {
            let k = (data.len() as f64).sqrt() as usize;
            let cost = DMatrix::from_row_slice(k, k, data);
            let (_, total) = solve_cost_matrix(&cost);
            assert!((total - brute_force(&cost)).abs() < 1e-12);
        }
    }

    #[test]
    fn shape_mismatch() {
        let a = DMatrix::zeros(2, 3);
        let b = DMatrix::zeros(2, 2);
        assert!(solve_assignment(&a, &b).is_err());
    }
}
