use super::field::Field;
use super::matrix::Matrix;

/// Reduced row echelon form of an augmented system `(A | b)`.
///
/// Rows `0..rank` carry the pivots in the order of `pivot_cols`; row `k`
/// has a 1 in column `pivot_cols[k]` and zeros in every other pivot column.
/// Rows from `rank` on are zero in the coefficient part.
#[derive(Clone, Debug, PartialEq)]
pub struct RrefResult<F> {
    pub reduced_matrix: Matrix<F>,
    pub reduced_rhs: Vec<F>,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    pub rank: usize,
    /// False iff some zero row of the reduced matrix has a nonzero rhs.
    pub consistent: bool,
}

/// Gauss-Jordan elimination over any field.
///
/// Columns are scanned left to right; among the remaining rows with a
/// nonzero entry in the column, the one with the smallest
/// [`Field::pivot_key`] becomes the pivot.
pub fn rref_solve<F: Field>(a: &Matrix<F>, b: &[F]) -> RrefResult<F> {
    eliminate(a, b, false).0
}

/// Like [`rref_solve`], also returning the `m x m` matrix `T` of
/// accumulated row operations, so that `T * (A | b) = (R | c)`.
pub fn rref_solve_tracked<F: Field>(a: &Matrix<F>, b: &[F]) -> (RrefResult<F>, Matrix<F>) {
    let (r, t) = eliminate(a, b, true);
    (r, t.expect("tracking requested"))
}

fn eliminate<F: Field>(a: &Matrix<F>, b: &[F], track: bool) -> (RrefResult<F>, Option<Matrix<F>>) {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "rhs length must match row count");
    let mut work = Matrix::from_fn(m, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let mut transform = track.then(|| Matrix::<F>::identity(m));
    let mut pivot_cols = Vec::new();
    let mut free_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            free_cols.push(c);
            continue;
        }
        let pivot = (r..m)
            .filter(|&i| !work[(i, c)].is_zero())
            .min_by(|&x, &y| work[(x, c)].pivot_key().cmp(&work[(y, c)].pivot_key()).then(x.cmp(&y)));
        let Some(p) = pivot else {
            free_cols.push(c);
            continue;
        };
        work.swap_rows(r, p);
        if let Some(t) = transform.as_mut() {
            t.swap_rows(r, p);
        }
        let inv = work[(r, c)].inv();
        for x in work.row_mut(r) {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        if let Some(t) = transform.as_mut() {
            for x in t.row_mut(r) {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = work.row(r).to_vec();
        let pivot_t = transform.as_ref().map(|t| t.row(r).to_vec());
        for i in 0..m {
            if i == r || work[(i, c)].is_zero() {
                continue;
            }
            let factor = work[(i, c)].clone();
            for (x, p) in work.row_mut(i).iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
            if let (Some(t), Some(pt)) = (transform.as_mut(), pivot_t.as_ref()) {
                for (x, p) in t.row_mut(i).iter_mut().zip(pt) {
                    if !p.is_zero() {
                        *x = x.sub(&factor.mul(p));
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = r;
    let consistent = (rank..m).all(|i| work[(i, n)].is_zero());
    let reduced_matrix = Matrix::from_fn(m, n, |i, j| work[(i, j)].clone());
    let reduced_rhs = (0..m).map(|i| work[(i, n)].clone()).collect();
    (
        RrefResult {
            reduced_matrix,
            reduced_rhs,
            pivot_cols,
            free_cols,
            rank,
            consistent,
        },
        transform,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rational_from_i64 as q;
    use num_rational::BigRational;

    fn mat(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()).unwrap()
    }

    fn vec_q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn identity_system() {
        let r = rref_solve(&mat(&[&[1, 0], &[0, 1]]), &vec_q(&[1, 2]));
        assert_eq!(r.rank, 2);
        assert!(r.consistent);
        assert!(r.free_cols.is_empty());
        assert_eq!(r.reduced_rhs, vec_q(&[1, 2]));
    }

    #[test]
    fn contradictory_rows() {
        let r = rref_solve(&mat(&[&[1, 1], &[1, 1]]), &vec_q(&[1, 2]));
        assert_eq!(r.rank, 1);
        assert!(!r.consistent);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.free_cols, vec![1]);
    }

    #[test]
    fn tracked_transform_reproduces_reduction() {
        let a = mat(&[&[0, 2, 4, 1], &[1, 1, 1, 0], &[2, 4, 6, 1]]);
        let b = vec_q(&[3, 1, 5]);
        let (r, t) = rref_solve_tracked(&a, &b);
        assert_eq!(t.mul_mat(&a), r.reduced_matrix);
        assert_eq!(t.mul_vec(&b), r.reduced_rhs);
        assert_eq!(r, rref_solve(&a, &b));
    }

    #[test]
    fn zero_columns_become_free() {
        let r = rref_solve(&mat(&[&[0, 3], &[0, 6]]), &vec_q(&[3, 6]));
        assert_eq!(r.pivot_cols, vec![1]);
        assert_eq!(r.free_cols, vec![0]);
        assert!(r.consistent);
        assert_eq!(r.reduced_rhs, vec_q(&[1, 0]));
    }
}
