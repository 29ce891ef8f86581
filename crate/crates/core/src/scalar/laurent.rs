use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::rational::lcm_u64;
use super::valuation::Valuation;

/// A finite sum of rational multiples of `t^(k/grid)`.
///
/// Canonical form: terms strictly increasing in `k`, no zero coefficient,
/// and `grid` minimal (`grid == 1` for the zero polynomial).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    grid: u64,
    terms: Vec<(i64, BigRational)>,
}

/// `content * s^shift * poly(s)` where `s = t^(1/grid)` and `poly` is a
/// primitive integer polynomial with nonzero constant term.
#[derive(Clone, Debug)]
pub(crate) struct Factored {
    pub shift: i64,
    pub content: BigRational,
    pub poly: IntPoly,
}

impl Default for LaurentPoly {
    fn default() -> Self {
        LaurentPoly::zero()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            grid: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::from_grid_terms(1, [(0, c)])
    }

    /// `coeff * t^exp` for a rational exponent.
    pub fn monomial(coeff: BigRational, exp: &BigRational) -> Self {
        let grid = exp_denominator(exp);
        let k = grid_index(exp, grid).expect("exponent lies on its own grid");
        LaurentPoly::from_grid_terms(grid, [(k, coeff)])
    }

    /// Builds from `(k, c)` pairs meaning `c * t^(k/grid)`; duplicates are
    /// summed and the result is canonicalized.
    pub fn from_grid_terms<I>(grid: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(grid > 0, "grid denominator must be positive");
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            *acc.entry(k).or_insert_with(BigRational::zero) += c;
        }
        let terms: Vec<(i64, BigRational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentPoly::from_sorted(grid, terms)
    }

    /// Terms must already be strictly increasing and nonzero.
    fn from_sorted(grid: u64, mut terms: Vec<(i64, BigRational)>) -> Self {
        if terms.is_empty() {
            return LaurentPoly::zero();
        }
        let mut g = grid as i64;
        for (k, _) in &terms {
            g = g.gcd(k);
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            for (k, _) in terms.iter_mut() {
                *k /= g;
            }
        }
        LaurentPoly {
            grid: grid / g as u64,
            terms,
        }
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    /// Terms as `(k, c)`, each meaning `c * t^(k/grid)`.
    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((k, _)) => Valuation::Finite(BigRational::new(BigInt::from(*k), BigInt::from(self.grid))),
            None => Valuation::Infinity,
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Iterates `(exponent, coefficient)` with rational exponents.
    pub fn exponent_terms(&self) -> impl Iterator<Item = (BigRational, &BigRational)> + '_ {
        let g = BigInt::from(self.grid);
        self.terms
            .iter()
            .map(move |(k, c)| (BigRational::new(BigInt::from(*k), g.clone()), c))
    }

    /// Terms re-expressed on a finer grid; `grid` must be a multiple of `self.grid()`.
    pub fn on_grid(&self, grid: u64) -> Vec<(i64, BigRational)> {
        assert_eq!(grid % self.grid, 0, "target grid {grid} does not refine {}", self.grid);
        let f = (grid / self.grid) as i64;
        self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    pub fn coefficient(&self, exp: &BigRational) -> BigRational {
        match grid_index(exp, self.grid) {
            Some(k) => match self.terms.binary_search_by_key(&k, |(e, _)| *e) {
                Ok(i) => self.terms[i].1.clone(),
                Err(_) => BigRational::zero(),
            },
            None => BigRational::zero(),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            grid: self.grid,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            grid: self.grid,
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let grid = lcm_u64(self.grid, other.grid);
        let a = self.on_grid(grid);
        let b = other.on_grid(grid);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly::from_sorted(grid, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (mono, poly) = if self.terms.len() == 1 { (self, other) } else { (other, self) };
            let grid = lcm_u64(self.grid, other.grid);
            let (mk, mc) = &mono.on_grid(grid)[0];
            let terms = poly.on_grid(grid).into_iter().map(|(k, c)| (k + mk, c * mc)).collect();
            return LaurentPoly::from_sorted(grid, terms);
        }
        let grid = lcm_u64(self.grid, other.grid);
        let a = self.factor(grid);
        let b = other.factor(grid);
        LaurentPoly::unfactor(grid, a.shift + b.shift, &(a.content * b.content), &a.poly.mul(&b.poly))
    }

    /// Multiplies by `t^exp`.
    pub fn shift(&self, exp: &BigRational) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let grid = lcm_u64(self.grid, exp_denominator(exp));
        let d = grid_index(exp, grid).unwrap();
        let terms = self.on_grid(grid).into_iter().map(|(k, c)| (k + d, c)).collect();
        LaurentPoly::from_sorted(grid, terms)
    }

    /// Substitutes `t -> t^factor` for a positive rational factor.
    pub fn regrid_by(&self, factor: &BigRational) -> Self {
        assert!(factor.is_positive(), "regrid factor must be positive");
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let num = factor.numer().clone();
        let den = factor.denom().clone();
        let grid = BigInt::from(self.grid) * den;
        let grid: u64 = u64::try_from(grid).expect("grid denominator overflow");
        let n = i64::try_from(num).expect("regrid factor overflow");
        let terms = self.terms.iter().map(|(k, c)| (k * n, c.clone())).collect();
        LaurentPoly::from_sorted(grid, terms)
    }

    /// Splits off the lowest monomial and the rational content on `grid`.
    pub(crate) fn factor(&self, grid: u64) -> Factored {
        assert!(!self.is_zero());
        let terms = self.on_grid(grid);
        let shift = terms[0].0;
        let mut den_lcm = BigInt::one();
        for (_, c) in &terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let len = (terms.last().unwrap().0 - shift) as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (k, c) in &terms {
            coeffs[(k - shift) as usize] = c.numer() * (&den_lcm / c.denom());
        }
        let raw = IntPoly::from_coeffs(coeffs);
        let g = raw.content();
        let poly = IntPoly::from_coeffs(raw.coeffs().iter().map(|c| c / &g).collect());
        Factored {
            shift,
            content: BigRational::new(g, den_lcm),
            poly,
        }
    }

    pub(crate) fn unfactor(grid: u64, shift: i64, content: &BigRational, poly: &IntPoly) -> Self {
        let terms = poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (shift + d as i64, content * BigRational::from_integer(c.clone())))
            .collect();
        LaurentPoly::from_sorted(grid, terms)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.exponent_terms().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if e.is_one() {
                    write!(f, "t")?;
                } else if e.is_integer() {
                    write!(f, "t^{e}")?;
                } else {
                    write!(f, "t^({e})")?;
                }
            }
        }
        Ok(())
    }
}

/// Denominator of a rational exponent, as a grid.
pub(crate) fn exp_denominator(e: &BigRational) -> u64 {
    u64::try_from(e.denom().clone()).expect("exponent denominator overflow")
}

/// `e * grid` as an integer, when `e` lies on that grid.
pub(crate) fn grid_index(e: &BigRational, grid: u64) -> Option<i64> {
    let scaled = e * BigRational::from_integer(BigInt::from(grid));
    if !scaled.is_integer() {
        return None;
    }
    Some(i64::try_from(scaled.to_integer()).expect("grid exponent overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rational_from_i64 as q;

    fn lp(grid: u64, t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_grid_terms(grid, t.iter().map(|&(k, c)| (k, q(c, 1))))
    }

    #[test]
    fn grid_is_minimized() {
        let p = lp(4, &[(2, 1), (6, 3)]);
        assert_eq!(p.grid(), 2);
        assert_eq!(p.terms(), &[(1, q(1, 1)), (3, q(3, 1))]);
        assert_eq!(lp(3, &[]).grid(), 1);
    }

    #[test]
    fn half_powers_multiply_to_integer() {
        let s = lp(2, &[(1, 1)]);
        assert_eq!(s.mul(&s), lp(1, &[(1, 1)]));
    }

    #[test]
    fn cancellation_in_add() {
        let a = lp(1, &[(-1, 1), (0, 1)]);
        let b = lp(1, &[(-1, -1)]);
        assert_eq!(a.add(&b), LaurentPoly::one());
        assert_eq!(a.sub(&a), LaurentPoly::zero());
    }

    #[test]
    fn dense_product_matches_schoolbook() {
        let a = LaurentPoly::from_grid_terms(1, [(-1, q(1, 2)), (0, q(-3, 1)), (2, q(2, 3))]);
        let b = LaurentPoly::from_grid_terms(2, [(1, q(5, 1)), (3, q(-1, 7))]);
        let mut expect = Vec::new();
        for (e1, c1) in a.exponent_terms() {
            for (e2, c2) in b.exponent_terms() {
                expect.push(LaurentPoly::monomial(c1 * c2, &(&e1 + &e2)));
            }
        }
        let expect = expect.iter().fold(LaurentPoly::zero(), |acc, m| acc.add(m));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn regrid_and_back() {
        let a = LaurentPoly::from_grid_terms(3, [(-1, q(1, 1)), (4, q(2, 5))]);
        let up = a.regrid_by(&q(3, 1));
        assert_eq!(up.grid(), 1);
        assert_eq!(up.regrid_by(&q(1, 3)), a);
    }

    #[test]
    fn display() {
        let a = LaurentPoly::from_grid_terms(2, [(-2, q(1, 1)), (0, q(3, 1)), (1, q(-1, 2))]);
        assert_eq!(a.to_string(), "t^-1 + 3 - 1/2*t^(1/2)");
    }
}
