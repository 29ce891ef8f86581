use std::fmt;

use num_traits::ToPrimitive;

use super::layout::{ColumnUnknown, UnknownLayout, VarId};
use crate::linalg::{LinearForm, PolyRref, SharedDenominatorSeries};
use crate::scalar::Valuation;

/// Names a form: `L[i,k]` is the coefficient of `t^k` in the residual of
/// reduced row `i`; `y[j,0]` is a constant coefficient of column `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormId {
    /// `row` is the 0-based pivot row of the subsystem.
    Residual { row: usize, order: i64 },
    Leading(VarId),
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormId::Residual { row, order } => write!(f, "L[{},{}]", row + 1, order),
            FormId::Leading(var) => write!(f, "{var}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forms {
    /// Negative-order conditions: every one must vanish.
    pub system3: Vec<(FormId, LinearForm)>,
    /// Leading coefficients: every one must be nonzero.
    pub family: Vec<(FormId, LinearForm)>,
}

/// `L[i,k](Y)`: coefficient of `t^k` in `sum_j R[i][j] x_j - c_i`.
fn residual_form(
    rref: &PolyRref,
    layout: &UnknownLayout,
    series: &mut SharedDenominatorSeries,
    row: usize,
    order: i64,
) -> LinearForm {
    let entries = &rref.rows[row];
    let mut form = LinearForm::constant(-series.coefficient(&entries[rref.cols()], order));
    for col in &layout.free {
        let num = &entries[col.position];
        match col.unknown {
            ColumnUnknown::FixedOne => {
                form.constant += series.coefficient(num, order);
            }
            ColumnUnknown::Poly { degree, first_var } => {
                for l in 0..=degree {
                    let c = series.coefficient(num, order - l as i64);
                    form.add_term(first_var + l, &c);
                }
            }
        }
    }
    form
}

/// Builds the negative-order conditions and the family of forms that must stay nonzero.
pub fn build_forms(rref: &PolyRref, layout: &UnknownLayout) -> Forms {
    assert_eq!(rref.grid, 1, "subsystem must be on the integer grid");
    let mut series = SharedDenominatorSeries::new(&rref.denom);
    let mut system3 = Vec::new();
    let mut family = Vec::new();
    for (row, s) in layout.row_orders.iter().enumerate() {
        let lowest = match s {
            Valuation::Infinity => {
                family.push((FormId::Residual { row, order: 0 }, LinearForm::default()));
                continue;
            }
            Valuation::Finite(s) => s.to_integer().to_i64().expect("order fits i64"),
        };
        for order in lowest..0 {
            system3.push((FormId::Residual { row, order }, residual_form(rref, layout, &mut series, row, order)));
        }
        family.push((FormId::Residual { row, order: 0 }, residual_form(rref, layout, &mut series, row, 0)));
    }
    for col in &layout.free {
        if let ColumnUnknown::Poly { first_var, .. } = col.unknown {
            family.push((FormId::Leading(layout.vars[first_var]), LinearForm::variable(first_var)));
        }
    }
    Forms { system3, family }
}
