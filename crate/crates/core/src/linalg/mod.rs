//! Exact linear algebra over an abstract field: Gauss-Jordan reduction,
//! affine solution spaces, and a fraction-free reduction for matrices of
//! rational functions.

mod affine;
mod field;
pub mod fraction_free;
mod matrix;
mod modular;
mod rref;

use thiserror::Error;

pub use affine::{forms_to_system, solve_affine, vanishes_identically, AffineSpace, LinearForm};
pub use field::Field;
pub use fraction_free::{bareiss_rref, fraction_free_rref, PolyRref, SharedDenominatorSeries};
pub use matrix::Matrix;
pub use rref::{rref_solve, rref_solve_tracked, RrefResult};

use crate::scalar::PuiseuxRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
}

/// Reduced row echelon form over the series field, computed fraction-free
/// and returned in canonical form. Agrees exactly with [`rref_solve`],
/// except that the rhs below the rank of an inconsistent system is only a
/// nonzero marker.
pub fn rref_solve_series(a: &Matrix<PuiseuxRational>, b: &[PuiseuxRational]) -> RrefResult<PuiseuxRational> {
    fraction_free_rref(a, b).to_rref(a.rows())
}
