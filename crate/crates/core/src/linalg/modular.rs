//! Exact reduction of full-row-rank polynomial systems by evaluation and
//! interpolation modulo word-size primes.
//!
//! For integer polynomial rows `(A | b)` with `m` rows, pick pivot columns
//! `P` from one specialization. When `A[:, P]` is nonsingular, Cramer's
//! rule gives every reduced entry as `F[k][j] / D` with `D = det A[:, P]`
//! and `F[k][j]` the same determinant with column `k` replaced by column
//! `j`. Both are polynomials whose degree and coefficient size are bounded
//! a priori (by row degrees and row 1-norms), so their values at enough
//! roots of unity modulo enough primes determine them exactly. Finally the
//! zero pattern of `F` proves `P` is the leftmost column basis.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::scalar::intpoly::IntPoly;

/// Primes `c * 2^ORDER_BITS + 1` below `2^62`.
const ORDER_BITS: u32 = 24;

#[derive(Clone, Copy, Debug)]
struct Mont {
    p: u64,
    /// `-p^-1 mod 2^64`.
    neg_inv: u64,
    /// `2^128 mod p`.
    r2: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    fn one(&self) -> u64 {
        self.to_mont(1)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn from_bigint(&self, c: &BigInt) -> u64 {
        let r = (c.magnitude() % BigUint::from(self.p)).iter_u64_digits().next().unwrap_or(0);
        let r = self.to_mont(r);
        if c.sign() == Sign::Minus {
            self.sub(0, r)
        } else {
            r
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// NTT-friendly primes in decreasing order.
fn ntt_primes() -> impl Iterator<Item = u64> {
    let top = ((1u64 << 62) - 1) >> ORDER_BITS;
    (1..=top).rev().map(|c| (c << ORDER_BITS) + 1).filter(|&p| is_prime(p))
}

/// Field of one prime with a primitive `len`-th root of unity.
struct PrimeField {
    f: Mont,
    len: usize,
    /// `omega^i` for `i < len`, Montgomery form.
    roots: Vec<u64>,
}

impl PrimeField {
    fn new(p: u64, len: usize) -> Self {
        let f = Mont::new(p);
        let exp = (p - 1) / len as u64;
        let minus_one = f.sub(0, f.one());
        let omega = (2..)
            .map(|a| f.pow(f.to_mont(a), exp))
            .find(|&w| len == 1 || f.pow(w, len as u64 / 2) == minus_one)
            .expect("a primitive root of unity exists");
        let mut roots = Vec::with_capacity(len);
        let mut x = f.one();
        for _ in 0..len {
            roots.push(x);
            x = f.mul(x, omega);
        }
        PrimeField { f, len, roots }
    }

    /// Coefficients (Montgomery form) of the polynomial of degree `< len`
    /// taking `values[i]` at `omega^i`.
    fn interpolate(&self, values: &mut [u64]) {
        let n = self.len;
        let f = &self.f;
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                values.swap(i, j);
            }
        }
        // inverse transform: use omega^-1 = omega^(n - k)
        let mut half = 1;
        while half < n {
            let step = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let w = self.roots[(n - k * step) % n];
                    let u = values[start + k];
                    let v = f.mul(values[start + k + half], w);
                    values[start + k] = f.add(u, v);
                    values[start + k + half] = f.sub(u, v);
                }
            }
            half *= 2;
        }
        let inv_n = f.inv(f.to_mont(n as u64));
        for v in values.iter_mut() {
            *v = f.mul(*v, inv_n);
        }
    }
}

/// Rows as Montgomery coefficient vectors for one prime.
fn reduce_rows(f: &Mont, rows: &[Vec<IntPoly>]) -> Vec<Vec<Vec<u64>>> {
    rows.iter()
        .map(|row| row.iter().map(|p| p.coeffs().iter().map(|c| f.from_bigint(c)).collect()).collect())
        .collect()
}

fn eval(f: &Mont, coeffs: &[u64], x: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Pivot columns of the rows specialized at `x`, or `None` when the
/// specialization has rank below the row count.
fn profile_at(f: &Mont, rows: &[Vec<Vec<u64>>], n: usize, x: u64) -> Option<Vec<usize>> {
    let mut mat: Vec<Vec<u64>> = rows.iter().map(|r| r[..n].iter().map(|p| eval(f, p, x)).collect()).collect();
    let m = mat.len();
    let mut pivots = Vec::with_capacity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| mat[i][c] != 0) else {
            continue;
        };
        mat.swap(r, p);
        let inv = f.inv(mat[r][c]);
        for j in c..n {
            mat[r][j] = f.mul(mat[r][j], inv);
        }
        for i in r + 1..m {
            let factor = mat[i][c];
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let t = f.mul(factor, mat[r][j]);
                mat[i][j] = f.sub(mat[i][j], t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r == m).then_some(pivots)
}

/// Values at `x` of `D` and of `F[k][j]` for the target columns, or `None`
/// if `A[:, P]` is singular there.
fn values_at(f: &Mont, rows: &[Vec<Vec<u64>>], pivots: &[usize], targets: &[usize], x: u64) -> Option<(u64, Vec<u64>)> {
    let m = rows.len();
    let t = targets.len();
    // [A_P | A_targets]
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| pivots.iter().chain(targets).map(|&j| eval(f, &r[j], x)).collect())
        .collect();
    let mut det = f.one();
    for k in 0..m {
        let p = (k..m).find(|&i| mat[i][k] != 0)?;
        if p != k {
            mat.swap(p, k);
            det = f.sub(0, det);
        }
        let pv = mat[k][k];
        det = f.mul(det, pv);
        let inv = f.inv(pv);
        for j in k..m + t {
            mat[k][j] = f.mul(mat[k][j], inv);
        }
        for i in 0..m {
            if i == k {
                continue;
            }
            let factor = mat[i][k];
            if factor == 0 {
                continue;
            }
            for j in k..m + t {
                let s = f.mul(factor, mat[k][j]);
                mat[i][j] = f.sub(mat[i][j], s);
            }
        }
    }
    let mut out = Vec::with_capacity(m * t);
    for row in &mat {
        for &v in &row[m..] {
            out.push(f.mul(v, det));
        }
    }
    Some((det, out))
}

/// Garner reconstruction of symmetric residues.
struct Crt {
    primes: Vec<u64>,
    /// `inverse of (p_0 ... p_{i-1}) mod p_i`.
    inverses: Vec<u64>,
    modulus: BigInt,
}

impl Crt {
    fn new(primes: Vec<u64>) -> Self {
        let mut inverses = Vec::with_capacity(primes.len());
        for (i, &p) in primes.iter().enumerate() {
            let prod = primes[..i].iter().fold(1u64, |acc, &q| mulmod(acc, q % p, p));
            inverses.push(powmod(prod, p - 2, p));
        }
        let modulus = primes.iter().fold(BigInt::one(), |acc, &p| acc * p);
        Crt {
            primes,
            inverses,
            modulus,
        }
    }

    fn combine(&self, residues: &[u64]) -> BigInt {
        let k = self.primes.len();
        let mut digits = vec![0u64; k];
        for i in 0..k {
            let p = self.primes[i];
            // value of the mixed-radix prefix modulo p
            let mut acc = 0u64;
            for j in (0..i).rev() {
                acc = (mulmod(acc, self.primes[j] % p, p) + digits[j] % p) % p;
            }
            let diff = (residues[i] + p - acc) % p;
            digits[i] = mulmod(diff, self.inverses[i], p);
        }
        let mut value = BigInt::zero();
        for j in (0..k).rev() {
            value = value * self.primes[j] + digits[j];
        }
        if &value * 2 > self.modulus {
            value - &self.modulus
        } else {
            value
        }
    }
}

/// `(pivot columns, F rows of length n + 1, D)` for rows of length
/// `n + 1` (last entry the rhs), when the rows have full rank and the
/// modular route applies; `None` sends the caller to exact elimination.
pub(crate) fn modular_rref(rows: &[Vec<IntPoly>], n: usize) -> Option<(Vec<usize>, Vec<Vec<IntPoly>>, IntPoly)> {
    let m = rows.len();
    if m == 0 || m > n {
        return None;
    }
    let mut degree_bound = 0usize;
    let mut bits_bound = 1u64;
    for row in rows {
        degree_bound += row.iter().filter_map(IntPoly::degree).max().unwrap_or(0);
        let norm: BigInt = row.iter().flat_map(|p| p.coeffs().iter().map(|c| c.abs())).sum();
        bits_bound += norm.bits();
    }
    let len = (degree_bound + 1).next_power_of_two();
    if len > 1 << ORDER_BITS {
        return None;
    }
    let mut primes = ntt_primes();
    let first = PrimeField::new(primes.next().expect("primes exist"), len);
    let first_rows = reduce_rows(&first.f, rows);
    // a point away from 0 and 1, where structure is least special
    let probe = first.roots[len / 2 + len / 4 % len.max(1)];
    let probe = if len >= 4 { probe } else { first.f.to_mont(3) };
    let pivots = profile_at(&first.f, &first_rows, n, probe)?;
    let targets: Vec<usize> = (0..=n).filter(|j| !pivots.contains(j)).collect();
    let t = targets.len();

    // residues[prime][entry][coefficient]; entry m*t is D
    let mut used = Vec::new();
    let mut residues: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut field = Some((first, first_rows));
    let mut product_bits = 0u64;
    let mut failures = 0;
    while product_bits < bits_bound + 1 {
        let (pf, reduced) = match field.take() {
            Some(x) => x,
            None => {
                let pf = PrimeField::new(primes.next()?, len);
                let reduced = reduce_rows(&pf.f, rows);
                (pf, reduced)
            }
        };
        let mut table = vec![vec![0u64; len]; m * t + 1];
        let mut ok = true;
        for i in 0..len {
            match values_at(&pf.f, &reduced, &pivots, &targets, pf.roots[i]) {
                Some((det, vals)) => {
                    for (e, v) in vals.into_iter().enumerate() {
                        table[e][i] = v;
                    }
                    table[m * t][i] = det;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            failures += 1;
            if failures > 4 {
                return None;
            }
            continue;
        }
        for col in table.iter_mut() {
            pf.interpolate(col);
            for c in col.iter_mut() {
                *c = pf.f.from_mont(*c);
            }
        }
        product_bits += 63 - u64::from(pf.f.p.leading_zeros()) - 1;
        used.push(pf.f.p);
        residues.push(table);
    }
    let crt = Crt::new(used);
    let k = residues.len();
    let poly = |e: usize| {
        let coeffs: Vec<BigInt> = (0..len)
            .map(|c| {
                let r: Vec<u64> = (0..k).map(|q| residues[q][e][c]).collect();
                crt.combine(&r)
            })
            .collect();
        IntPoly::from_coeffs(coeffs)
    };
    let denom = poly(m * t);
    let mut out = vec![vec![IntPoly::zero(); n + 1]; m];
    for (kk, &p) in pivots.iter().enumerate() {
        out[kk][p] = denom.clone();
    }
    for (ti, &j) in targets.iter().enumerate() {
        for (kk, row) in out.iter_mut().enumerate() {
            let f = poly(kk * t + ti);
            // leftmost basis: column j lies in the span of earlier pivots
            if j < n && pivots[kk] > j && !f.is_zero() {
                return None;
            }
            row[j] = f;
        }
    }
    Some((pivots, out, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn primes_are_ntt_friendly() {
        let ps: Vec<u64> = ntt_primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        for &q in &ps {
            assert!(q < 1 << 62);
            assert_eq!((q - 1) % (1 << ORDER_BITS), 0);
        }
    }

    #[test]
    fn interpolation_inverts_evaluation() {
        let pf = PrimeField::new(ntt_primes().next().unwrap(), 8);
        let f = &pf.f;
        let coeffs: Vec<u64> = [3u64, 0, 5, 1].iter().map(|&c| f.to_mont(c)).collect();
        let mut vals: Vec<u64> = pf.roots.iter().map(|&x| eval(f, &coeffs, x)).collect();
        pf.interpolate(&mut vals);
        let back: Vec<u64> = vals.iter().map(|&v| f.from_mont(v)).collect();
        assert_eq!(back, vec![3, 0, 5, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn crt_signed() {
        let crt = Crt::new(ntt_primes().take(3).collect());
        let x = BigInt::from(-123456789012345678i64) * BigInt::from(987654321987654321i64);
        let r: Vec<u64> = crt
            .primes
            .iter()
            .map(|&q| {
                let m = x.clone() % BigInt::from(q);
                let m = if m.is_negative() { m + BigInt::from(q) } else { m };
                m.iter_u64_digits().next().unwrap_or(0)
            })
            .collect();
        assert_eq!(crt.combine(&r), x);
    }

    #[test]
    fn cramer_values() {
        // [1, s | 1] -> pivots [0], F = [D, s, 1], D = 1
        let rows = vec![vec![p(&[1]), p(&[0, 1]), p(&[1])]];
        let (piv, f, d) = modular_rref(&rows, 2).unwrap();
        assert_eq!(piv, vec![0]);
        assert_eq!(d, p(&[1]));
        assert_eq!(f[0], vec![p(&[1]), p(&[0, 1]), p(&[1])]);
    }

    #[test]
    fn rank_deficient_is_declined() {
        let rows = vec![vec![p(&[1]), p(&[1]), p(&[0])], vec![p(&[2]), p(&[2]), p(&[1])]];
        assert!(modular_rref(&rows, 2).is_none());
    }
}
