//! Exact arithmetic in the field of rational functions in a fractional
//! power of `t`, with valuations and expansion coefficients at `t = 0`.

pub mod intpoly;
mod laurent;
mod puiseux;
pub mod rational;
mod valuation;

use thiserror::Error;

pub use laurent::LaurentPoly;
pub use puiseux::{field_op, linear_combination_equals, CombinationChecker, FieldOp, PuiseuxRational};
pub use valuation::Valuation;

/// Exponents are rational; `Infinity` only ever appears as a [`Valuation`].
pub type Exponent = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}
