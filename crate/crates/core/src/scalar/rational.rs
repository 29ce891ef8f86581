//! Exact rational strings: `"p"` or `"p/r"`, nothing else.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational")]
    Empty,
    #[error("`{0}` is not an exact rational of the form p or p/r")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn parse_int(s: &str, whole: &str, allow_sign: bool) -> Result<BigInt, RationalParseError> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        _ => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::Malformed(whole.to_string()))
}

/// Parses `"p"` or `"p/r"` with an optional leading minus on `p`.
///
/// Decimal points, exponents, whitespace and signs on `r` are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (parse_int(n, s, true)?, parse_int(d, s, false)?),
        None => (parse_int(s, s, true)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn rational_from_i64(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_exact_forms() {
        assert_eq!(parse_rational("3").unwrap(), rational_from_i64(3, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), rational_from_i64(-3, 2));
        assert_eq!(parse_rational("0/7").unwrap(), rational_from_i64(0, 1));
    }

    #[test]
    fn rejects_inexact_forms() {
        for bad in ["0.5", "1e3", " 1", "1/", "/2", "1/-2", "+1", "--1", "1/2/3", "nan", "inf"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&rational_from_i64(4, -6)), "-2/3");
        assert_eq!(format_rational(&rational_from_i64(5, 1)), "5");
    }
}
