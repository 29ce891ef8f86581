//! Dense univariate polynomials over the integers.
//!
//! This is the workhorse behind canonicalization (content, gcd) and the
//! fraction-free elimination in [`crate::linalg::fraction_free`]. Coefficients
//! are stored lowest degree first; the vector never ends in a zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*s^{d}")?;
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `s^k`; the caller guarantees `k <= low_degree`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.low_degree().is_none_or(|l| l >= k));
        IntPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            match (self.coeffs.get(d), other.coeffs.get(d)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            match (self.coeffs.get(d), other.coeffs.get(d)) {
                (Some(a), Some(b)) => out.push(a - b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(-b),
                (None, None) => unreachable!(),
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// `self * a - other * b`, the Bareiss cross term, without temporaries.
    pub fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Self {
        let len = (a.coeffs.len() + x.coeffs.len()).max(b.coeffs.len() + y.coeffs.len());
        if len == 0 {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); len];
        for (i, p) in a.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in x.coeffs.iter().enumerate() {
                if !q.is_zero() {
                    out[i + j] += p * q;
                }
            }
        }
        for (i, p) in b.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.coeffs.iter().enumerate() {
                if !q.is_zero() {
                    out[i + j] -= p * q;
                }
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Exact quotient `self / divisor` over the integers.
    ///
    /// Returns `None` when the division leaves a remainder or a
    /// non-integral quotient coefficient.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let Some(nd) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if nd < dd {
            return None;
        }
        let lc = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[k + i] -= &q * c;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Gcd of the coefficients, always nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo_rem by zero");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - dd;
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &top * c;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() > dd {
                // keep coefficient growth in check
                let p = IntPoly::from_coeffs(rem).primitive_abs();
                rem = p.coeffs;
            }
        }
        IntPoly::from_coeffs(rem)
    }

    fn primitive_abs(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Greatest common divisor over `Q[s]`, returned primitive with a
    /// positive leading coefficient.
    ///
    /// A reduction modulo a large prime settles the common coprime case
    /// cheaply; otherwise the primitive remainder sequence runs.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return IntPoly::one();
        }
        if modular::coprime_certificate(a, b) {
            return IntPoly::one();
        }
        let (mut x, mut y) = if a.degree() >= b.degree() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        while !y.is_zero() {
            let r = x.pseudo_rem(&y);
            x = y;
            y = r.primitive();
        }
        if x.degree() == Some(0) {
            IntPoly::one()
        } else {
            x.primitive()
        }
    }
}

pub(crate) mod modular {
    //! Arithmetic modulo fixed word-size primes.

    use num_bigint::{BigInt, Sign};
    use num_traits::ToPrimitive;

    use super::IntPoly;

    const PRIMES: [u64; 3] = [
        (1u64 << 61) - 1,
        (1u64 << 63) - 25,
        u64::MAX - 58, // 2^64 - 59
    ];

    fn reduce(c: &BigInt, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((c % &m) + &m) % &m;
        match r.sign() {
            Sign::NoSign => 0,
            _ => r.to_u64().unwrap(),
        }
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn submod(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            p - (b - a)
        }
    }

    fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a, p);
            }
            a = mulmod(a, a, p);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64, p: u64) -> u64 {
        powmod(a, p - 2, p)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
        trim(&mut a);
        trim(&mut b);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let lc_inv = inv(*b.last().unwrap(), p);
            while a.len() >= b.len() {
                let q = mulmod(*a.last().unwrap(), lc_inv, p);
                let shift = a.len() - b.len();
                for (i, c) in b.iter().enumerate() {
                    a[shift + i] = submod(a[shift + i], mulmod(q, *c, p), p);
                }
                trim(&mut a);
                if a.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }

    /// True when `a` and `b` are provably coprime over `Q`.
    ///
    /// If `p` divides neither leading coefficient, any common factor over
    /// `Q` survives reduction with its degree intact, so a trivial gcd mod
    /// `p` certifies coprimality. A nontrivial one proves nothing.
    pub(crate) fn coprime_certificate(a: &IntPoly, b: &IntPoly) -> bool {
        for &p in &PRIMES {
            let la = reduce(a.leading().unwrap(), p);
            let lb = reduce(b.leading().unwrap(), p);
            if la == 0 || lb == 0 {
                continue;
            }
            let ra: Vec<u64> = a.coeffs().iter().map(|c| reduce(c, p)).collect();
            let rb: Vec<u64> = b.coeffs().iter().map(|c| reduce(c, p)).collect();
            return gcd_degree(ra, rb, p) == 0;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn gcd_of_products() {
        // (1+s)(2-s) and (1+s)(3+s^2)
        let f = p(&[1, 1]);
        let a = f.mul(&p(&[2, -1]));
        let b = f.mul(&p(&[3, 0, 1]));
        assert_eq!(IntPoly::gcd(&a, &b), p(&[1, 1]));
        assert_eq!(IntPoly::gcd(&p(&[2, -1]), &p(&[3, 0, 1])), IntPoly::one());
    }

    #[test]
    fn gcd_with_repeated_factor() {
        let f = p(&[-1, 1]);
        let a = f.mul(&f).mul(&p(&[5, 7]));
        let b = f.mul(&f).mul(&f);
        assert_eq!(IntPoly::gcd(&a, &b), f.mul(&f));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]).mul(&p(&[3, -2, 4]));
        assert_eq!(a.exact_div(&p(&[1, 1])), Some(p(&[3, -2, 4])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 1]).exact_div(&p(&[2])), None);
    }

    #[test]
    fn cross_matches_products() {
        let a = p(&[1, 2]);
        let x = p(&[0, 3, 1]);
        let b = p(&[4]);
        let y = p(&[1, 1, 1, 1]);
        assert_eq!(IntPoly::cross(&a, &x, &b, &y), a.mul(&x).sub(&b.mul(&y)));
    }
}
