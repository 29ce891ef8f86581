use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::intpoly::IntPoly;
use super::laurent::{grid_index, LaurentPoly};
use super::rational::lcm_u64;
use super::valuation::Valuation;
use super::ScalarError;

/// An element of `Q(t^(1/q))`, the exact stand-in for a Puiseux series.
///
/// Canonical form: `den` has valuation 0 and lowest coefficient 1, and
/// `num` and `den` share no factor once placed on a common grid. Equal
/// field elements are therefore structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PuiseuxRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// The binary field operations, for callers that pick one at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `kind` to `a` and `b`. Only division can fail.
pub fn field_op(kind: FieldOp, a: &PuiseuxRational, b: &PuiseuxRational) -> Result<PuiseuxRational, ScalarError> {
    Ok(match kind {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl Default for PuiseuxRational {
    fn default() -> Self {
        PuiseuxRational::zero()
    }
}

impl From<LaurentPoly> for PuiseuxRational {
    fn from(num: LaurentPoly) -> Self {
        PuiseuxRational {
            num,
            den: LaurentPoly::one(),
        }
    }
}

impl From<BigRational> for PuiseuxRational {
    fn from(c: BigRational) -> Self {
        LaurentPoly::constant(c).into()
    }
}

impl From<i64> for PuiseuxRational {
    fn from(c: i64) -> Self {
        BigRational::from_integer(BigInt::from(c)).into()
    }
}

impl PuiseuxRational {
    pub fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    /// `c * t^e`.
    pub fn monomial(c: BigRational, e: &BigRational) -> Self {
        LaurentPoly::monomial(c, e).into()
    }

    /// `num / den` in canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(canonicalize(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Smallest grid carrying both numerator and denominator.
    pub fn grid(&self) -> u64 {
        lcm_u64(self.num.grid(), self.den.grid())
    }

    /// Lowest exponent of the expansion at `t = 0`; `Infinity` for zero.
    pub fn valuation(&self) -> Valuation {
        // canonical denominators have valuation 0
        self.num.valuation()
    }

    /// Lowest-order coefficient, `None` for zero.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.num.lowest_coeff()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(canonicalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// `self * t^e`; the valuation moves by exactly `e`.
    pub fn scale_by_monomial(&self, e: &BigRational) -> Self {
        PuiseuxRational {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    /// Substitutes `t -> t^n`.
    pub fn regrid(&self, n: u64) -> Self {
        assert!(n > 0, "regrid factor must be positive");
        self.regrid_by(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Substitutes `t -> t^factor` for any positive rational factor.
    ///
    /// Coprimality survives the substitution, so the result stays canonical.
    pub fn regrid_by(&self, factor: &BigRational) -> Self {
        PuiseuxRational {
            num: self.num.regrid_by(factor),
            den: self.den.regrid_by(factor),
        }
    }

    /// Coefficient of `t^e` in the expansion about `t = 0`.
    ///
    /// Exponents off the element's grid have coefficient zero.
    pub fn coefficient_at(&self, e: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        if self.den.is_one() {
            return self.num.coefficient(e);
        }
        let grid = self.grid();
        let Some(k) = grid_index(e, grid) else {
            return BigRational::zero();
        };
        self.series_window(grid, k, k).pop().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients of `s^k` for `k` in `from..=to`, where `s = t^(1/grid)`
    /// and `grid` refines [`Self::grid`].
    pub fn series_window(&self, grid: u64, from: i64, to: i64) -> Vec<BigRational> {
        if from > to {
            return Vec::new();
        }
        let width = (to - from + 1) as usize;
        if self.is_zero() {
            return vec![BigRational::zero(); width];
        }
        let num = self.num.on_grid(grid);
        let den = self.den.on_grid(grid);
        let low = num[0].0;
        if to < low {
            return vec![BigRational::zero(); width];
        }
        // den = 1 + d_1 s + ...; solve c * den = num order by order
        let len = (to - low + 1) as usize;
        let mut dense_den = vec![BigRational::zero(); len.min((den.last().unwrap().0 + 1) as usize)];
        for (k, c) in &den {
            if (*k as usize) < dense_den.len() {
                dense_den[*k as usize] = c.clone();
            }
        }
        let mut series: Vec<BigRational> = Vec::with_capacity(len);
        let mut num_iter = num.iter().peekable();
        for j in 0..len {
            let mut acc = match num_iter.peek() {
                Some((k, c)) if (*k - low) as usize == j => {
                    let c = c.clone();
                    num_iter.next();
                    c
                }
                _ => BigRational::zero(),
            };
            for (i, d) in dense_den.iter().enumerate().skip(1).take(j) {
                if !d.is_zero() && !series[j - i].is_zero() {
                    acc -= d * &series[j - i];
                }
            }
            series.push(acc);
        }
        (from..=to)
            .map(|k| {
                if k < low {
                    BigRational::zero()
                } else {
                    series[(k - low) as usize].clone()
                }
            })
            .collect()
    }

    /// Truncated expansion: every nonzero `(exponent, coefficient)` with
    /// exponent at most `upto`.
    pub fn expansion(&self, upto: &BigRational) -> Vec<(BigRational, BigRational)> {
        let Valuation::Finite(v) = self.valuation() else {
            return Vec::new();
        };
        if &v > upto {
            return Vec::new();
        }
        let grid = self.grid();
        let from = grid_index(&v, grid).unwrap();
        let to = (upto * BigRational::from_integer(BigInt::from(grid))).floor().to_integer();
        let to = i64::try_from(to).expect("expansion order overflow");
        let g = BigInt::from(grid);
        self.series_window(grid, from, to)
            .into_iter()
            .zip(from..)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, k)| (BigRational::new(BigInt::from(k), g.clone()), c))
            .collect()
    }
}

/// Exact test of `sum_j coeffs[j] * xs[j] == rhs`.
pub fn linear_combination_equals(coeffs: &[PuiseuxRational], xs: &[PuiseuxRational], rhs: &PuiseuxRational) -> bool {
    let grid = coeffs.iter().chain(std::iter::once(rhs)).fold(1, |g, a| lcm_u64(g, a.grid()));
    CombinationChecker::new(xs, grid).holds(coeffs, rhs)
}

/// `content * s^shift * poly / den` on a fixed grid `s = t^(1/grid)`.
#[derive(Clone, Debug)]
struct Split {
    shift: i64,
    content: BigRational,
    poly: IntPoly,
    /// `None` for a Laurent polynomial.
    den: Option<IntPoly>,
}

impl Split {
    fn new(x: &PuiseuxRational, grid: u64) -> Option<Self> {
        if x.is_zero() {
            return None;
        }
        let n = x.num.factor(grid);
        let (content, den) = if x.is_laurent() {
            (n.content, None)
        } else {
            let d = x.den.factor(grid);
            debug_assert_eq!(d.shift, 0);
            (n.content / d.content, Some(d.poly))
        };
        Some(Split {
            shift: n.shift,
            content,
            poly: n.poly,
            den,
        })
    }
}

/// Exact tests of `sum_j a[j] * xs[j] == rhs` for many coefficient rows
/// against one vector `xs`, which is split into integer parts once.
///
/// Terms are grouped by denominator and summed without gcd reduction, so
/// the cost stays close to the size of the products themselves.
pub struct CombinationChecker {
    grid: u64,
    xs: Vec<Option<Split>>,
}

/// A sum of terms `c * s^e * p` with rational `c`.
#[derive(Default)]
struct ScaledSum(Vec<(BigRational, i64, IntPoly)>);

impl ScaledSum {
    /// `(c, e, p)` with integer `p`, or `None` when the sum vanishes.
    fn total(self) -> Option<(BigRational, i64, IntPoly)> {
        let e_min = self.0.iter().map(|t| t.1).min()?;
        let mut l = BigInt::from(1);
        for (c, _, _) in &self.0 {
            l = l.lcm(c.denom());
        }
        let lr = BigRational::from_integer(l.clone());
        let mut sum = IntPoly::zero();
        for (c, e, p) in &self.0 {
            let k = (c * &lr).to_integer();
            sum = sum.add(&p.scale(&k).shift_up((e - e_min) as usize));
        }
        (!sum.is_zero()).then(|| (BigRational::new(BigInt::from(1), l), e_min, sum))
    }
}

impl CombinationChecker {
    /// `grid` must be a multiple of every coefficient's grid.
    pub fn new(xs: &[PuiseuxRational], grid: u64) -> Self {
        let grid = xs.iter().fold(grid, |g, x| lcm_u64(g, x.grid()));
        CombinationChecker {
            grid,
            xs: xs.iter().map(|x| Split::new(x, grid)).collect(),
        }
    }

    pub fn holds(&self, coeffs: &[PuiseuxRational], rhs: &PuiseuxRational) -> bool {
        assert_eq!(coeffs.len(), self.xs.len());
        // groups keyed by the pair of denominators, `None` first
        let mut groups: Vec<((Option<IntPoly>, Option<IntPoly>), ScaledSum)> = Vec::new();
        let mut push = |d1: Option<&IntPoly>, d2: Option<&IntPoly>, term: (BigRational, i64, IntPoly)| {
            let key = if d1.is_some() && d2.is_none() { (None, d1.cloned()) } else { (d1.cloned(), d2.cloned()) };
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, sum)) => sum.0.push(term),
                None => groups.push((key, ScaledSum(vec![term]))),
            }
        };
        for (a, x) in coeffs.iter().zip(&self.xs) {
            let (Some(a), Some(x)) = (Split::new(a, self.grid), x) else {
                continue;
            };
            let term = (&a.content * &x.content, a.shift + x.shift, a.poly.mul(&x.poly));
            push(a.den.as_ref(), x.den.as_ref(), term);
        }
        if let Some(r) = Split::new(rhs, self.grid) {
            push(r.den.as_ref(), None, (-r.content, r.shift, r.poly));
        }
        let groups: Vec<((Option<IntPoly>, Option<IntPoly>), (BigRational, i64, IntPoly))> =
            groups.into_iter().filter_map(|(k, sum)| sum.total().map(|t| (k, t))).collect();
        match groups.len() {
            0 => true,
            1 => false,
            _ => {
                let mut total = ScaledSum::default();
                for (g, (_, (c, e, p))) in groups.iter().enumerate() {
                    let mut term = p.clone();
                    for (h, (key, _)) in groups.iter().enumerate() {
                        if h != g {
                            for d in [&key.0, &key.1].into_iter().flatten() {
                                term = term.mul(d);
                            }
                        }
                    }
                    total.0.push((c.clone(), *e, term));
                }
                total.total().is_none()
            }
        }
    }
}

/// Reduces `num / den` to canonical form; `den` must be nonzero.
fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> PuiseuxRational {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return PuiseuxRational::zero();
    }
    if den.num_terms() == 1 {
        let (k, c) = den.terms()[0].clone();
        let e = BigRational::new(BigInt::from(-k), BigInt::from(den.grid()));
        return PuiseuxRational {
            num: num.shift(&e).scale(&c.recip()),
            den: LaurentPoly::one(),
        };
    }
    let grid = lcm_u64(num.grid(), den.grid());
    let n = num.factor(grid);
    let d = den.factor(grid);
    let g = IntPoly::gcd(&n.poly, &d.poly);
    let (np, dp) = if g.degree() == Some(0) {
        (n.poly, d.poly)
    } else {
        (
            n.poly.exact_div(&g).expect("gcd divides numerator"),
            d.poly.exact_div(&g).expect("gcd divides denominator"),
        )
    };
    // den = d.content * dp; make its constant term 1
    let d0 = BigRational::from_integer(dp.coeff(0));
    let num_content = n.content / d.content / &d0;
    let den_content = d0.recip();
    PuiseuxRational {
        num: LaurentPoly::unfactor(grid, n.shift - d.shift, &num_content, &np),
        den: LaurentPoly::unfactor(grid, 0, &den_content, &dp),
    }
}

impl Add for &PuiseuxRational {
    type Output = PuiseuxRational;

    fn add(self, rhs: &PuiseuxRational) -> PuiseuxRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return canonicalize(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        canonicalize(num, self.den.mul(&rhs.den))
    }
}

impl Sub for &PuiseuxRational {
    type Output = PuiseuxRational;

    fn sub(self, rhs: &PuiseuxRational) -> PuiseuxRational {
        self + &(-rhs)
    }
}

impl Neg for &PuiseuxRational {
    type Output = PuiseuxRational;

    fn neg(self) -> PuiseuxRational {
        PuiseuxRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &PuiseuxRational {
    type Output = PuiseuxRational;

    fn mul(self, rhs: &PuiseuxRational) -> PuiseuxRational {
        if self.is_zero() || rhs.is_zero() {
            return PuiseuxRational::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return self.num.mul(&rhs.num).into();
        }
        canonicalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for PuiseuxRational {
            type Output = PuiseuxRational;
            fn $method(self, rhs: PuiseuxRational) -> PuiseuxRational {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for PuiseuxRational {
    type Output = PuiseuxRational;

    fn neg(self) -> PuiseuxRational {
        -&self
    }
}

impl fmt::Debug for PuiseuxRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PuiseuxRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rational_from_i64 as q;

    fn lp(grid: u64, t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_grid_terms(grid, t.iter().map(|&(k, c)| (k, q(c, 1))))
    }

    fn pr(num: LaurentPoly, den: LaurentPoly) -> PuiseuxRational {
        PuiseuxRational::new(num, den).unwrap()
    }

    #[test]
    fn denominator_constant_is_normalized() {
        // (t^-3 + 3/2 t^2)^-1 = t^3 / (1 + 3/2 t^5)
        let x: PuiseuxRational = LaurentPoly::from_grid_terms(1, [(-3, q(1, 1)), (2, q(3, 2))]).into();
        let inv = x.inv().unwrap();
        assert_eq!(inv.num(), &lp(1, &[(3, 1)]));
        assert_eq!(inv.den(), &LaurentPoly::from_grid_terms(1, [(0, q(1, 1)), (5, q(3, 2))]));
        assert!((&x * &inv).is_one());
        let y = pr(lp(1, &[(0, 6), (1, 4)]), lp(1, &[(0, 4), (2, 6)]));
        assert_eq!(y.num(), &LaurentPoly::from_grid_terms(1, [(0, q(3, 2)), (1, q(1, 1))]));
        assert_eq!(y.den(), &LaurentPoly::from_grid_terms(1, [(0, q(1, 1)), (2, q(3, 2))]));
    }

    #[test]
    fn valuation_examples() {
        let a: PuiseuxRational = lp(1, &[(-1, 1), (0, 3), (1, 1)]).into();
        assert_eq!(a.valuation(), Valuation::Finite(q(-1, 1)));
        assert_eq!(PuiseuxRational::zero().valuation(), Valuation::Infinity);
        let b = pr(lp(1, &[(2, 1), (3, 1)]), lp(1, &[(0, 1), (1, -1)]));
        assert_eq!(b.valuation(), Valuation::Finite(q(2, 1)));
    }

    #[test]
    fn field_op_examples() {
        let s: PuiseuxRational = lp(2, &[(1, 1)]).into();
        assert_eq!(field_op(FieldOp::Mul, &s, &s).unwrap(), lp(1, &[(1, 1)]).into());

        let one_minus_t: PuiseuxRational = lp(1, &[(0, 1), (1, -1)]).into();
        let r = field_op(FieldOp::Div, &PuiseuxRational::one(), &one_minus_t).unwrap();
        assert_eq!(r.num(), &LaurentPoly::one());
        assert_eq!(r.den(), &lp(1, &[(0, 1), (1, -1)]));

        let a: PuiseuxRational = lp(1, &[(-1, 1), (0, 1)]).into();
        let b: PuiseuxRational = lp(1, &[(-1, -1)]).into();
        assert_eq!(field_op(FieldOp::Add, &a, &b).unwrap(), PuiseuxRational::one());

        assert_eq!(
            field_op(FieldOp::Div, &a, &PuiseuxRational::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_form_is_unique() {
        // (1 - t) / (1 - t^(1/2)) = 1 + t^(1/2)
        let a = pr(lp(1, &[(0, 1), (1, -1)]), lp(2, &[(0, 1), (1, -1)]));
        assert_eq!(a, lp(2, &[(0, 1), (1, 1)]).into());
        // (2t + 2t^2) / (4t - 4t^3) = (1/2) / (1 - t)
        let b = pr(lp(1, &[(1, 2), (2, 2)]), lp(1, &[(1, 4), (3, -4)]));
        assert_eq!(b.num(), &LaurentPoly::constant(q(1, 2)));
        assert_eq!(b.den(), &lp(1, &[(0, 1), (1, -1)]));
    }

    #[test]
    fn coefficient_at_examples() {
        let geo = pr(LaurentPoly::one(), lp(1, &[(0, 1), (1, -1)]));
        assert_eq!(geo.coefficient_at(&q(2, 1)), q(1, 1));
        let a: PuiseuxRational = lp(1, &[(-1, 1), (0, 3), (1, 1)]).into();
        assert_eq!(a.coefficient_at(&q(0, 1)), q(3, 1));
        let c = pr(lp(1, &[(2, 1)]), lp(1, &[(0, 1), (1, 1)]));
        assert_eq!(c.coefficient_at(&q(3, 1)), q(-1, 1));
        assert_eq!(c.coefficient_at(&q(1, 1)), q(0, 1));
        assert_eq!(c.coefficient_at(&q(5, 2)), q(0, 1));
    }

    #[test]
    fn long_division_cross_check() {
        // t^2/(1+t) = t^2 - t^3 + t^4 - ...; multiply back by (1+t) to order 4
        let c = pr(lp(1, &[(2, 1)]), lp(1, &[(0, 1), (1, 1)]));
        let s: Vec<(BigRational, BigRational)> = c.expansion(&q(4, 1));
        let trunc = LaurentPoly::from_grid_terms(1, s.iter().map(|(e, v)| (e.to_integer().try_into().unwrap(), v.clone())));
        assert_eq!(trunc, lp(1, &[(2, 1), (3, -1), (4, 1)]));
        let back = trunc.mul(&lp(1, &[(0, 1), (1, 1)]));
        for k in 0..=4 {
            assert_eq!(back.coefficient(&q(k, 1)), if k == 2 { q(1, 1) } else { q(0, 1) });
        }
    }

    #[test]
    fn scale_by_monomial_examples() {
        let a: PuiseuxRational = lp(1, &[(0, 1), (1, 1)]).into();
        assert_eq!(a.scale_by_monomial(&q(1, 2)), lp(2, &[(1, 1), (3, 1)]).into());
        assert_eq!(PuiseuxRational::zero().scale_by_monomial(&q(7, 3)), PuiseuxRational::zero());
        let b: PuiseuxRational = lp(1, &[(-1, 1), (0, 1)]).into();
        assert_eq!(b.scale_by_monomial(&q(3, 1)).valuation(), Valuation::Finite(q(2, 1)));
    }

    #[test]
    fn regrid_examples() {
        let a: PuiseuxRational = lp(2, &[(1, 1), (2, 1)]).into();
        assert_eq!(a.regrid(2), lp(1, &[(1, 1), (2, 1)]).into());
        assert_eq!(PuiseuxRational::one().regrid(5), PuiseuxRational::one());
        let b: PuiseuxRational = lp(3, &[(-1, 1)]).into();
        assert_eq!(b.regrid(3).valuation(), Valuation::Finite(q(-1, 1)));
    }

    #[test]
    fn rational_function_regrid_round_trip() {
        let a = pr(lp(3, &[(1, 2), (4, -1)]), lp(2, &[(0, 1), (3, 5)]));
        assert_eq!(a.regrid(6).regrid_by(&q(1, 6)), a);
    }
}
