use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::forms::Forms;
use crate::linalg::{forms_to_system, solve_affine, vanishes_identically, AffineSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSuccess {
    /// Values of the unknowns, in layout order.
    pub y: Vec<BigRational>,
    /// The candidate index that passed.
    pub p: u64,
    /// `|family| * dim + 1`; `p` never exceeds it.
    pub bound: u64,
    /// Dimension of the solution space of the negative-order conditions.
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepFailure {
    System3Infeasible,
    /// Index into the family of the first form that vanishes identically.
    FamilyVanishes(usize),
    /// No candidate passed within the bound; a defect, never a verdict.
    Exhausted { bound: u64 },
}

/// The candidate `w + sum_{l=1..r} p^l w_l` of the sweep.
pub fn sweep_candidate(space: &AffineSpace, p: u64) -> Vec<BigRational> {
    let base = BigRational::from_integer(BigInt::from(p));
    let mut power = BigRational::one();
    let params: Vec<BigRational> = (0..space.dim())
        .map(|_| {
            power = &power * &base;
            power.clone()
        })
        .collect();
    space.point(&params)
}

/// Solves the negative-order conditions and picks the first candidate on which no form of the
/// family vanishes.
pub fn solve_and_sweep(forms: &Forms, num_vars: usize) -> Result<SweepSuccess, SweepFailure> {
    let system: Vec<_> = forms.system3.iter().map(|(_, f)| f.clone()).collect();
    let (a, b) = forms_to_system(&system, num_vars);
    let space = solve_affine(&a, &b).ok_or(SweepFailure::System3Infeasible)?;
    if let Some(idx) = forms.family.iter().position(|(_, f)| vanishes_identically(f, &space)) {
        return Err(SweepFailure::FamilyVanishes(idx));
    }
    let dim = space.dim();
    let bound = forms.family.len() as u64 * dim as u64 + 1;
    for p in 1..=bound {
        let y = sweep_candidate(&space, p);
        if forms.family.iter().all(|(_, f)| !f.eval(&y).is_zero()) {
            return Ok(SweepSuccess { y, p, bound, dim });
        }
    }
    Err(SweepFailure::Exhausted { bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::forms::FormId;
    use crate::linalg::LinearForm;
    use crate::scalar::rational::rational_from_i64 as q;

    fn form(constant: i64, terms: &[(usize, i64)]) -> LinearForm {
        let mut f = LinearForm::constant(q(constant, 1));
        for &(v, c) in terms {
            f.add_term(v, &q(c, 1));
        }
        f
    }

    fn id(order: i64) -> FormId {
        FormId::Residual { row: 0, order }
    }

    #[test]
    fn e2_first_candidate_passes() {
        let forms = Forms {
            system3: vec![],
            family: vec![(id(0), form(0, &[(0, 1), (1, 1)])), (id(0), form(0, &[(0, 1)])), (id(0), form(0, &[(1, 1)]))],
        };
        let s = solve_and_sweep(&forms, 2).unwrap();
        assert_eq!(s.y, vec![q(1, 1), q(1, 1)]);
        assert_eq!((s.p, s.dim, s.bound), (1, 2, 7));
    }

    #[test]
    fn infeasible_and_vanishing() {
        let bad = Forms {
            system3: vec![(id(-1), form(-1, &[]))],
            family: vec![],
        };
        assert_eq!(solve_and_sweep(&bad, 0), Err(SweepFailure::System3Infeasible));
        let vanish = Forms {
            system3: vec![(id(-1), form(0, &[(0, 1)]))],
            family: vec![(id(0), form(-1, &[(0, 1), (1, 1)])), (id(0), form(0, &[(0, 1)]))],
        };
        assert_eq!(solve_and_sweep(&vanish, 2), Err(SweepFailure::FamilyVanishes(1)));
    }

    #[test]
    fn sweep_skips_roots() {
        // y - 1 and y - 2 vanish at p = 1, 2
        let forms = Forms {
            system3: vec![],
            family: vec![(id(0), form(-1, &[(0, 1)])), (id(0), form(-2, &[(0, 1)]))],
        };
        let s = solve_and_sweep(&forms, 1).unwrap();
        assert_eq!(s.p, 3);
        assert_eq!(s.y, vec![q(3, 1)]);
    }
}
