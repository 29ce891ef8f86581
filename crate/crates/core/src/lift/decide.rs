use num_rational::BigRational;

use super::forms::{build_forms, Forms};
use super::layout::{attach_unknowns, UnknownLayout};
use super::partition::normalize_and_partition;
use super::reconstruct::reconstruct_witness;
use super::strip::strip_infinite;
use super::sweep::{solve_and_sweep, SweepFailure, SweepSuccess};
use super::{LiftError, LiftResult, Stage};
use crate::instance::{Instance, TropPoint};
use crate::linalg::fraction_free_rref;
use crate::scalar::{CombinationChecker, PuiseuxRational};

/// What happened inside one congruence class.
#[derive(Clone, Debug)]
pub struct SubsystemTrace {
    pub residue: BigRational,
    /// Original columns of the class.
    pub columns: Vec<usize>,
    /// Original columns chosen as pivots.
    pub pivot_columns: Vec<usize>,
    pub layout: Option<UnknownLayout>,
    pub forms: Option<Forms>,
    pub sweep: Option<SweepSuccess>,
}

#[derive(Clone, Debug)]
pub struct DecideTrace {
    pub grid_factor: u64,
    pub pinned: Vec<usize>,
    pub subsystems: Vec<SubsystemTrace>,
    pub result: LiftResult,
}

/// Decides whether `v` is the valuation of some solution of `A x = b`,
/// returning a verified witness when it is.
pub fn decide(inst: &Instance, v: &TropPoint) -> Result<LiftResult, LiftError> {
    decide_traced(inst, v).map(|t| t.result)
}

fn not_member(stage: Stage, detail: String) -> LiftResult {
    LiftResult::NotMember { stage, detail }
}

/// [`decide`], also returning every intermediate object.
pub fn decide_traced(inst: &Instance, v: &TropPoint) -> Result<DecideTrace, LiftError> {
    v.check_len(inst.n())?;
    let stripped = strip_infinite(inst, v);
    let partition = normalize_and_partition(&stripped.instance, &stripped.point);
    let mut trace = DecideTrace {
        grid_factor: partition.grid_factor,
        pinned: stripped.pinned.clone(),
        subsystems: Vec::new(),
        result: LiftResult::Member { witness: Vec::new() },
    };
    if partition.empty_class_with_rhs {
        trace.result = not_member(
            Stage::EmptyClassWithRhs,
            "b is nonzero but no finite coordinate of v is congruent to an integer".into(),
        );
        return Ok(trace);
    }

    let mut witness = vec![PuiseuxRational::zero(); inst.n()];
    for sub in &partition.subsystems {
        let labels: Vec<usize> = sub.columns.iter().map(|&k| stripped.kept[k]).collect();
        let rref = fraction_free_rref(&sub.a, &sub.rhs);
        let mut st = SubsystemTrace {
            residue: sub.residue.clone(),
            columns: labels.clone(),
            pivot_columns: rref.pivot_cols.iter().map(|&k| labels[k]).collect(),
            layout: None,
            forms: None,
            sweep: None,
        };
        if !rref.consistent {
            trace.subsystems.push(st);
            trace.result = not_member(Stage::InfeasibleOverK, "A x = b has no solution".into());
            return Ok(trace);
        }
        let layout = attach_unknowns(&rref, &labels);
        let forms = build_forms(&rref, &layout);
        let outcome = solve_and_sweep(&forms, layout.num_vars());
        let name = |i: usize| layout.var_name(i);
        let failure = match &outcome {
            Ok(_) => None,
            Err(SweepFailure::System3Infeasible) => Some(not_member(
                Stage::System3Infeasible,
                format!("negative-order conditions are inconsistent for the class of residue {}", sub.residue),
            )),
            Err(SweepFailure::FamilyVanishes(idx)) => {
                let (id, form) = &forms.family[*idx];
                Some(not_member(
                    Stage::FamilyLVanishes(*id),
                    format!(
                        "{id} = {} vanishes on every solution of the negative-order conditions",
                        form.display_with(&name)
                    ),
                ))
            }
            Err(SweepFailure::Exhausted { bound }) => {
                return Err(LiftError::Internal(format!("no sweep candidate passed up to p = {bound}")));
            }
        };
        if let Some(result) = failure {
            st.layout = Some(layout);
            st.forms = Some(forms);
            trace.subsystems.push(st);
            trace.result = result;
            return Ok(trace);
        }
        let sweep = outcome.expect("failures handled above");
        let coords = reconstruct_witness(sub, &rref, &layout, partition.grid_factor, &sweep.y);
        for (x, &j) in coords.into_iter().zip(&labels) {
            witness[j] = x;
        }
        st.layout = Some(layout);
        st.forms = Some(forms);
        st.sweep = Some(sweep);
        trace.subsystems.push(st);
    }
    if let Some(why) = witness_defect(inst, v, &witness) {
        return Err(LiftError::Internal(format!("reconstructed witness failed verification: {why}")));
    }
    trace.result = LiftResult::Member { witness };
    Ok(trace)
}

/// True iff `A x = b` holds exactly and `val(x_j) = v_j` for every `j`.
pub fn verify_witness(inst: &Instance, v: &TropPoint, x: &[PuiseuxRational]) -> bool {
    witness_defect(inst, v, x).is_none()
}

fn witness_defect(inst: &Instance, v: &TropPoint, x: &[PuiseuxRational]) -> Option<String> {
    if x.len() != inst.n() || v.len() != inst.n() {
        return Some(format!("{} coordinates for {} columns", x.len(), inst.n()));
    }
    for (j, (xj, vj)) in x.iter().zip(v.coords()).enumerate() {
        let got = xj.valuation();
        if &got != vj {
            return Some(format!("coordinate {} has valuation {got}, expected {vj}", j + 1));
        }
    }
    let checker = CombinationChecker::new(x, inst.grid());
    (0..inst.m())
        .find(|&i| !checker.holds(inst.a().row(i), &inst.b()[i]))
        .map(|i| format!("row {} does not hold", i + 1))
}
