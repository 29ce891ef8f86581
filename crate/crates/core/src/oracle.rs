//! Brute-force membership test through the circuits of `[A | -b]`.
//!
//! A point `v` is in the tropicalization iff for every nonzero vector `c`
//! of minimal support in the row space of `[A | -b]`, the minimum of
//! `val(c_j) + w_j` over the support is attained at least twice, where
//! `w = (v, 0)`. Enumeration is exponential in the column count, so this is
//! a cross-check for small instances only.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::instance::{Instance, InstanceError, TropPoint};
use crate::lift::strip_infinite;
use crate::linalg::{fraction_free_rref, Matrix};
use crate::scalar::{PuiseuxRational, Valuation};

pub const DEFAULT_MAX_COLS: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{cols} columns exceed the enumeration guard of {max}")]
    TooLarge { cols: usize, max: usize },
    #[error(transparent)]
    Input(#[from] InstanceError),
}

/// A row-space vector of minimal support.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    /// Sorted column indices.
    pub support: Vec<usize>,
    /// Full-length vector, zero off the support.
    pub vector: Vec<PuiseuxRational>,
}

/// `[A | -b]`.
pub fn homogenize(inst: &Instance) -> Matrix<PuiseuxRational> {
    let n = inst.n();
    Matrix::from_fn(inst.m(), n + 1, |i, j| {
        if j < n {
            inst.a()[(i, j)].clone()
        } else {
            -inst.b()[i].clone()
        }
    })
}

/// Every support-minimal nonzero vector in the row space of `m`, one
/// representative per support, by increasing support size.
pub fn minimal_support_vectors(m: &Matrix<PuiseuxRational>, max_cols: usize) -> Result<Vec<Circuit>, OracleError> {
    let n = m.cols();
    if n > max_cols {
        return Err(OracleError::TooLarge { cols: n, max: max_cols });
    }
    let zeros = vec![PuiseuxRational::zero(); m.rows()];
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|s| (s.count_ones(), *s));
    let mut found: Vec<u32> = Vec::new();
    let mut circuits = Vec::new();
    for s in masks {
        if found.iter().any(|&c| c & s == c) {
            continue;
        }
        // columns outside S first: rows pivoting inside S vanish off S
        let outside: Vec<usize> = (0..n).filter(|j| s & (1 << j) == 0).collect();
        let inside: Vec<usize> = (0..n).filter(|j| s & (1 << j) != 0).collect();
        let order: Vec<usize> = outside.iter().chain(&inside).copied().collect();
        let rref = fraction_free_rref(&m.select_cols(&order), &zeros);
        let Some(k) = rref.pivot_cols.iter().position(|&p| p >= outside.len()) else {
            continue;
        };
        // no smaller support lies inside S, so any such vector has support S
        let mut vector = vec![PuiseuxRational::zero(); n];
        for (pos, &j) in order.iter().enumerate().skip(outside.len()) {
            vector[j] = rref.entry(k, pos);
        }
        debug_assert!(inside.iter().all(|&j| !vector[j].is_zero()));
        found.push(s);
        circuits.push(Circuit { support: inside, vector });
    }
    Ok(circuits)
}

/// The minimum of `val(c_j) + w_j` over the support is attained twice.
pub fn min_attained_twice(c: &Circuit, w: &[Valuation]) -> bool {
    let values: Vec<Valuation> = c.support.iter().map(|&j| c.vector[j].valuation().plus(&w[j])).collect();
    let min = values.iter().min().expect("circuits are nonzero");
    values.iter().filter(|x| *x == min).count() >= 2
}

/// Circuit-based membership verdict for `v`; infinite coordinates are
/// removed first, as they pin the coordinate to zero.
pub fn member_oracle(inst: &Instance, v: &TropPoint, max_cols: usize) -> Result<bool, OracleError> {
    v.check_len(inst.n())?;
    let stripped = strip_infinite(inst, v);
    let m = homogenize(&stripped.instance);
    let circuits = minimal_support_vectors(&m, max_cols)?;
    let mut w: Vec<Valuation> = stripped.point.into_iter().map(Valuation::Finite).collect();
    w.push(Valuation::Finite(BigRational::zero()));
    Ok(circuits.iter().all(|c| min_attained_twice(c, &w)))
}
