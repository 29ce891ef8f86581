use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{PuiseuxRational, Valuation};

/// The operations elimination needs from a field.
pub trait Field: Clone + PartialEq + Debug {
    /// Orders pivot candidates within a column; the smallest key wins and
    /// ties go to the earliest row.
    type PivotKey: Ord;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self) -> Self;
    fn pivot_key(&self) -> Self::PivotKey;
}

impl Field for BigRational {
    type PivotKey = ();

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn pivot_key(&self) {}
}

impl Field for PuiseuxRational {
    type PivotKey = Valuation;

    fn zero() -> Self {
        PuiseuxRational::zero()
    }
    fn one() -> Self {
        PuiseuxRational::one()
    }
    fn is_zero(&self) -> bool {
        PuiseuxRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        PuiseuxRational::inv(self).expect("pivot is nonzero")
    }
    fn pivot_key(&self) -> Valuation {
        self.valuation()
    }
}
