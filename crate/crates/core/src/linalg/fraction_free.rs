//! Fraction-free Gauss-Jordan elimination for matrices over `Q(t^(1/q))`.
//!
//! Each row of `(A | b)` is first scaled into integer polynomials in
//! `s = t^(1/grid)`. Elimination then follows the Bareiss update
//!
//! ```text
//! a[i][j] <- (p * a[i][j] - a[i][c] * a[r][j]) / p_prev
//! ```
//!
//! applied to every row other than the pivot row, so all divisions are
//! exact and no rational function is ever reduced mid-way. At the end every
//! pivot row holds the same pivot value `D`, and the reduced entry in row
//! `k`, column `j` is `rows[k][j] / D`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::rref::RrefResult;
use crate::scalar::intpoly::IntPoly;
use crate::scalar::rational::lcm_u64;
use crate::scalar::{LaurentPoly, PuiseuxRational, Valuation};

/// Output of [`fraction_free_rref`], with entries as ratios over a shared
/// denominator.
#[derive(Clone, Debug)]
pub struct PolyRref {
    /// Entries live in `Q[s]` with `s = t^(1/grid)`.
    pub grid: u64,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    pub rank: usize,
    pub consistent: bool,
    /// `rank` rows of length `n + 1`; the last entry is the rhs.
    pub rows: Vec<Vec<IntPoly>>,
    /// Common denominator, nonzero.
    pub denom: IntPoly,
}

impl PolyRref {
    pub fn cols(&self) -> usize {
        self.pivot_cols.len() + self.free_cols.len()
    }

    /// Reduced entry at pivot row `k`, column `j` (`j == cols()` is the rhs).
    pub fn entry(&self, k: usize, j: usize) -> PuiseuxRational {
        let num = int_to_laurent(self.grid, &self.rows[k][j]);
        let den = int_to_laurent(self.grid, &self.denom);
        PuiseuxRational::new(num, den).expect("denominator is nonzero")
    }

    pub fn rhs(&self, k: usize) -> PuiseuxRational {
        self.entry(k, self.cols())
    }

    /// Valuation of the reduced entry, in units of `t` (not `s`).
    pub fn entry_valuation(&self, k: usize, j: usize) -> Valuation {
        let num = &self.rows[k][j];
        match num.low_degree() {
            None => Valuation::Infinity,
            Some(a) => {
                let b = self.denom.low_degree().expect("denominator is nonzero");
                Valuation::Finite(BigRational::new(BigInt::from(a as i64 - b as i64), BigInt::from(self.grid)))
            }
        }
    }

    /// Expands the whole reduction into canonical form.
    ///
    /// Rows below the rank are zero; their rhs is zero when consistent and
    /// a nonzero marker (one) otherwise.
    pub fn to_rref(&self, m: usize) -> RrefResult<PuiseuxRational> {
        let n = self.cols();
        let reduced_matrix = Matrix::from_fn(m, n, |i, j| {
            if i < self.rank {
                self.entry(i, j)
            } else {
                PuiseuxRational::zero()
            }
        });
        let reduced_rhs = (0..m)
            .map(|i| {
                if i < self.rank {
                    self.rhs(i)
                } else if self.consistent {
                    PuiseuxRational::zero()
                } else {
                    PuiseuxRational::one()
                }
            })
            .collect();
        RrefResult {
            reduced_matrix,
            reduced_rhs,
            pivot_cols: self.pivot_cols.clone(),
            free_cols: self.free_cols.clone(),
            rank: self.rank,
            consistent: self.consistent,
        }
    }
}

pub(crate) fn int_to_laurent(grid: u64, p: &IntPoly) -> LaurentPoly {
    LaurentPoly::from_grid_terms(
        grid,
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d as i64, BigRational::from_integer(c.clone()))),
    )
}

/// One row of `(A | b)` cleared to integer polynomials in `s`, plus the
/// exponent `shift` such that the original row equals the cleared row
/// times `s^shift` up to a unit of `Q(s)` of valuation zero.
struct ClearedRow {
    entries: Vec<IntPoly>,
    shift: i64,
}

fn clear_row(row: &[&PuiseuxRational], grid: u64) -> ClearedRow {
    let mut den_lcm = IntPoly::one();
    for x in row.iter().filter(|x| !x.is_zero() && !x.is_laurent()) {
        let d = x.den().factor(grid).poly;
        let g = IntPoly::gcd(&den_lcm, &d);
        den_lcm = den_lcm.mul(&d.exact_div(&g).expect("gcd divides"));
    }
    let mut parts = Vec::with_capacity(row.len());
    let mut min_shift = i64::MAX;
    let mut content_den = BigInt::one();
    for x in row {
        if x.is_zero() {
            parts.push(None);
            continue;
        }
        let n = x.num().factor(grid);
        let (d_content, cofactor) = if x.is_laurent() {
            (BigRational::one(), den_lcm.clone())
        } else {
            let d = x.den().factor(grid);
            (d.content, den_lcm.exact_div(&d.poly).expect("lcm is a multiple"))
        };
        let c = n.content / d_content;
        content_den = content_den.lcm(c.denom());
        min_shift = min_shift.min(n.shift);
        parts.push(Some((n.shift, c, n.poly.mul(&cofactor))));
    }
    if min_shift == i64::MAX {
        return ClearedRow {
            entries: vec![IntPoly::zero(); row.len()],
            shift: 0,
        };
    }
    let mut entries: Vec<IntPoly> = parts
        .into_iter()
        .map(|p| match p {
            None => IntPoly::zero(),
            Some((shift, c, poly)) => {
                let k = (c * BigRational::from_integer(content_den.clone())).to_integer();
                poly.scale(&k).shift_up((shift - min_shift) as usize)
            }
        })
        .collect();
    let mut g = BigInt::zero();
    for e in &entries {
        g = g.gcd(&e.content());
    }
    if !g.is_zero() && !g.is_one() {
        for e in entries.iter_mut() {
            *e = IntPoly::from_coeffs(e.coeffs().iter().map(|c| c / &g).collect());
        }
    }
    ClearedRow {
        entries,
        shift: min_shift,
    }
}

/// Reduced row echelon form of `(A | b)` without intermediate fractions.
///
/// The pivot rule and the resulting pivot columns match
/// [`super::rref_solve`]: columns left to right, and within a column the
/// remaining row whose entry has the smallest valuation. Full-row-rank
/// systems are reduced by modular interpolation instead, which yields the
/// same (unique) reduced form far faster.
pub fn fraction_free_rref(a: &Matrix<PuiseuxRational>, b: &[PuiseuxRational]) -> PolyRref {
    let n = a.cols();
    let (grid, rows, shifts) = clear_rows(a, b);
    let m = rows.len();
    if let Some((pivot_cols, rows, denom)) = super::modular::modular_rref(&rows, n) {
        let free_cols = (0..n).filter(|j| !pivot_cols.contains(j)).collect();
        let (rows, denom) = normalize_sign(rows, denom);
        return PolyRref {
            grid,
            rank: m,
            pivot_cols,
            free_cols,
            consistent: true,
            rows,
            denom,
        };
    }
    bareiss(grid, rows, shifts, n)
}

/// [`fraction_free_rref`] by Bareiss elimination alone.
pub fn bareiss_rref(a: &Matrix<PuiseuxRational>, b: &[PuiseuxRational]) -> PolyRref {
    let (grid, rows, shifts) = clear_rows(a, b);
    bareiss(grid, rows, shifts, a.cols())
}

fn clear_rows(a: &Matrix<PuiseuxRational>, b: &[PuiseuxRational]) -> (u64, Vec<Vec<IntPoly>>, Vec<i64>) {
    let m = a.rows();
    assert_eq!(b.len(), m, "rhs length must match row count");
    let mut grid = 1u64;
    for x in a.to_rows().iter().flatten().chain(b) {
        grid = lcm_u64(grid, x.grid());
    }
    let mut rows: Vec<Vec<IntPoly>> = Vec::with_capacity(m);
    let mut shifts: Vec<i64> = Vec::with_capacity(m);
    for i in 0..m {
        let row: Vec<&PuiseuxRational> = a.row(i).iter().chain(std::iter::once(&b[i])).collect();
        let cleared = clear_row(&row, grid);
        rows.push(cleared.entries);
        shifts.push(cleared.shift);
    }
    (grid, rows, shifts)
}

fn bareiss(grid: u64, mut rows: Vec<Vec<IntPoly>>, mut shifts: Vec<i64>, n: usize) -> PolyRref {
    let m = rows.len();
    let mut prev = IntPoly::one();
    let mut pivot_cols = Vec::new();
    let mut free_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            free_cols.push(c);
            continue;
        }
        // all candidate rows share the pending Bareiss factor, so the row
        // shift alone corrects the comparison
        let pivot = (r..m)
            .filter_map(|i| rows[i][c].low_degree().map(|d| (d as i64 + shifts[i], i)))
            .min();
        let Some((_, p)) = pivot else {
            free_cols.push(c);
            continue;
        };
        rows.swap(r, p);
        shifts.swap(r, p);
        let pivot_row = rows[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c].clone();
            for (j, x) in row.iter_mut().enumerate() {
                let updated = if factor.is_zero() || pivot_row[j].is_zero() {
                    if x.is_zero() {
                        continue;
                    }
                    x.mul(&pv)
                } else {
                    IntPoly::cross(&pv, x, &factor, &pivot_row[j])
                };
                *x = if prev.degree() == Some(0) && prev.coeff(0).is_one() {
                    updated
                } else {
                    updated.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
        }
        prev = pv;
        pivot_cols.push(c);
        r += 1;
    }
    let consistent = rows[r..].iter().all(|row| row[n].is_zero());
    rows.truncate(r);
    let denom = if r == 0 { IntPoly::one() } else { rows[0][pivot_cols[0]].clone() };
    debug_assert!(rows.iter().zip(&pivot_cols).all(|(row, &p)| row[p] == denom));
    let (rows, denom) = normalize_sign(rows, denom);
    PolyRref {
        grid,
        pivot_cols,
        free_cols,
        rank: r,
        consistent,
        rows,
        denom,
    }
}

fn normalize_sign(mut rows: Vec<Vec<IntPoly>>, denom: IntPoly) -> (Vec<Vec<IntPoly>>, IntPoly) {
    if denom.coeffs().iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x = x.neg();
            }
        }
        return (rows, denom.neg());
    }
    (rows, denom)
}

/// Exact expansion of `num / denom` at `s = 0` for many numerators over
/// one shared denominator.
pub struct SharedDenominatorSeries {
    low: i64,
    den: Vec<BigRational>,
    inv: Vec<BigRational>,
}

impl SharedDenominatorSeries {
    pub fn new(denom: &IntPoly) -> Self {
        let low = denom.low_degree().expect("denominator is nonzero");
        let den: Vec<BigRational> = denom.coeffs()[low..]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = vec![den[0].recip()];
        SharedDenominatorSeries { low: low as i64, den, inv }
    }

    fn ensure(&mut self, len: usize) {
        while self.inv.len() < len {
            let k = self.inv.len();
            let mut acc = BigRational::zero();
            for i in 1..=k.min(self.den.len() - 1) {
                if !self.den[i].is_zero() {
                    acc += &self.den[i] * &self.inv[k - i];
                }
            }
            let next = -acc * &self.inv[0];
            self.inv.push(next);
        }
    }

    /// Coefficient of `s^e` in `num / denom`.
    pub fn coefficient(&mut self, num: &IntPoly, e: i64) -> BigRational {
        // num/denom = sum_i num_i s^i * s^-low * inv(s)
        let top = e + self.low;
        if top < 0 {
            return BigRational::zero();
        }
        let Some(first) = num.low_degree() else {
            return BigRational::zero();
        };
        if (first as i64) > top {
            return BigRational::zero();
        }
        self.ensure((top - first as i64 + 1) as usize);
        let mut acc = BigRational::zero();
        let coeffs = num.coeffs();
        for i in first..=(top as usize).min(coeffs.len() - 1) {
            if !coeffs[i].is_zero() {
                acc += &self.inv[top as usize - i] * BigRational::from_integer(coeffs[i].clone());
            }
        }
        acc
    }
}
