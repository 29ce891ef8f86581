//! Membership test and lifting for tropical linear varieties.
//!
//! Given `A x = b` over the series field and a point `v`, [`decide`] either
//! returns an exact solution `x` with `val(x) = v` or names the stage at
//! which lifting became impossible. The pipeline:
//!
//! 1. [`strip_infinite`]: infinite coordinates pin `x_j = 0`.
//! 2. [`normalize_and_partition`]: clear exponent denominators, group
//!    columns whose coordinates differ by integers, and rescale each group
//!    so the target becomes the zero vector.
//! 3. Per group: reduce to echelon form, attach polynomial unknowns to free
//!    columns ([`attach_unknowns`]), collect the rational linear conditions
//!    on their coefficients ([`build_forms`]), and pick a point that keeps
//!    every leading coefficient nonzero ([`solve_and_sweep`]).
//! 4. [`reconstruct_witness`] undoes every transformation, and
//!    [`verify_witness`] re-checks the result exactly.

mod decide;
mod forms;
mod layout;
mod partition;
mod reconstruct;
mod strip;
mod sweep;

use std::fmt;

use thiserror::Error;

use crate::instance::InstanceError;
use crate::scalar::PuiseuxRational;

pub use decide::{decide, decide_traced, verify_witness, DecideTrace, SubsystemTrace};
pub use forms::{build_forms, FormId, Forms};
pub use layout::{attach_unknowns, ColumnUnknown, UnknownLayout, VarId};
pub use partition::{normalize_and_partition, Partition, Subsystem};
pub use reconstruct::reconstruct_witness;
pub use strip::{strip_infinite, Stripped};
pub use sweep::{solve_and_sweep, SweepFailure, SweepSuccess};

/// Where a non-membership was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// `A x = b` has no solution at all.
    InfeasibleOverK,
    /// `b != 0` but no coordinate of `v` is congruent to an integer.
    EmptyClassWithRhs,
    /// The negative-order conditions on the unknowns are contradictory.
    System3Infeasible,
    /// A leading-coefficient form is zero on every admissible choice.
    FamilyLVanishes(FormId),
}

impl Stage {
    /// Stable machine tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Stage::InfeasibleOverK => "InfeasibleOverK",
            Stage::EmptyClassWithRhs => "EmptyClassWithRhs",
            Stage::System3Infeasible => "System3Infeasible",
            Stage::FamilyLVanishes(_) => "FamilyLVanishes",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::FamilyLVanishes(id) => write!(f, "FamilyLVanishes({id})"),
            other => write!(f, "{}", other.tag()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftResult {
    Member { witness: Vec<PuiseuxRational> },
    NotMember { stage: Stage, detail: String },
}

impl LiftResult {
    pub fn is_member(&self) -> bool {
        matches!(self, LiftResult::Member { .. })
    }

    pub fn witness(&self) -> Option<&[PuiseuxRational]> {
        match self {
            LiftResult::Member { witness } => Some(witness),
            LiftResult::NotMember { .. } => None,
        }
    }

    pub fn stage(&self) -> Option<&Stage> {
        match self {
            LiftResult::Member { .. } => None,
            LiftResult::NotMember { stage, .. } => Some(stage),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    Input(#[from] InstanceError),
    /// A broken internal invariant; always a defect, never a verdict.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
