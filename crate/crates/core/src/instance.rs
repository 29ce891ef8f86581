use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::rational::lcm_u64;
use crate::scalar::{PuiseuxRational, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("rhs has {found} entries but A has {expected} rows")]
    RhsLength { expected: usize, found: usize },
    #[error("point has {found} coordinates but A has {expected} columns")]
    PointLength { expected: usize, found: usize },
}

/// A linear system `A x = b` over the series field.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    a: Matrix<PuiseuxRational>,
    b: Vec<PuiseuxRational>,
}

impl Instance {
    pub fn new(a: Matrix<PuiseuxRational>, b: Vec<PuiseuxRational>) -> Result<Self, InstanceError> {
        if a.rows() != b.len() {
            return Err(InstanceError::RhsLength {
                expected: a.rows(),
                found: b.len(),
            });
        }
        Ok(Instance { a, b })
    }

    pub fn a(&self) -> &Matrix<PuiseuxRational> {
        &self.a
    }

    pub fn b(&self) -> &[PuiseuxRational] {
        &self.b
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.b.iter().all(PuiseuxRational::is_zero)
    }

    /// Least common grid of every entry.
    pub fn grid(&self) -> u64 {
        self.a
            .to_rows()
            .iter()
            .flatten()
            .chain(&self.b)
            .fold(1, |g, x| lcm_u64(g, x.grid()))
    }

    /// Substitutes `t -> t^n` in every entry.
    pub fn regrid(&self, n: u64) -> Instance {
        Instance {
            a: self.a.map(|x| x.regrid(n)),
            b: self.b.iter().map(|x| x.regrid(n)).collect(),
        }
    }

    /// New instance whose column `k` is column `perm[k]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Instance {
        Instance {
            a: self.a.select_cols(perm),
            b: self.b.clone(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Instance {
        self.permute_cols(cols)
    }
}

/// A candidate point: one rational or infinite coordinate per column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropPoint {
    coords: Vec<Valuation>,
}

impl TropPoint {
    pub fn new(coords: Vec<Valuation>) -> Self {
        TropPoint { coords }
    }

    /// All-finite point from rationals.
    pub fn finite(coords: Vec<BigRational>) -> Self {
        TropPoint {
            coords: coords.into_iter().map(Valuation::Finite).collect(),
        }
    }

    /// Coordinatewise valuation of a vector.
    pub fn of(x: &[PuiseuxRational]) -> Self {
        TropPoint {
            coords: x.iter().map(PuiseuxRational::valuation).collect(),
        }
    }

    pub fn coords(&self) -> &[Valuation] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn check_len(&self, n: usize) -> Result<(), InstanceError> {
        if self.len() != n {
            return Err(InstanceError::PointLength {
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// Multiplies every finite coordinate by `n`.
    pub fn scale(&self, n: u64) -> TropPoint {
        let f = BigRational::from_integer(BigInt::from(n));
        TropPoint {
            coords: self
                .coords
                .iter()
                .map(|c| match c {
                    Valuation::Finite(v) => Valuation::Finite(v * &f),
                    Valuation::Infinity => Valuation::Infinity,
                })
                .collect(),
        }
    }

    pub fn permute(&self, perm: &[usize]) -> TropPoint {
        TropPoint {
            coords: perm.iter().map(|&j| self.coords[j].clone()).collect(),
        }
    }
}

impl fmt::Display for TropPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
