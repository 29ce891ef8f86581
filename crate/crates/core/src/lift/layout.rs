use std::fmt;

use num_traits::ToPrimitive;

use crate::linalg::PolyRref;
use crate::scalar::Valuation;

/// The unknown coefficient `y[column, power]` of `t^power` in a free
/// coordinate. `column` is the 0-based column of the original instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub column: usize,
    pub power: usize,
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y[{},{}]", self.column + 1, self.power)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnUnknown {
    /// Every entry of the column has positive valuation; `x_j = 1` works.
    FixedOne,
    /// `x_j = sum_{l <= degree} y[j, l] t^l`, variables from `first_var`.
    Poly { degree: usize, first_var: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeColumn {
    /// Column position within the subsystem.
    pub position: usize,
    /// Column of the original instance.
    pub label: usize,
    /// `-min_i val(a[i][j])`; `None` when the reduced column is zero.
    pub r: Option<i64>,
    pub unknown: ColumnUnknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownLayout {
    pub free: Vec<FreeColumn>,
    /// Lowest order `s_i` present in pivot row `i` among free entries and rhs.
    pub row_orders: Vec<Valuation>,
    /// Variable index to identity.
    pub vars: Vec<VarId>,
}

impl UnknownLayout {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, v: usize) -> String {
        self.vars[v].to_string()
    }
}

fn integer_valuation(v: &Valuation) -> Option<i64> {
    v.finite().map(|x| {
        assert!(x.is_integer(), "subsystem exponents must be integral, got {x}");
        x.to_integer().to_i64().expect("valuation fits i64")
    })
}

/// Assigns an unknown to every free column of a reduced subsystem.
///
/// `labels[k]` is the original column of subsystem column `k`.
pub fn attach_unknowns(rref: &PolyRref, labels: &[usize]) -> UnknownLayout {
    assert_eq!(rref.grid, 1, "subsystem must be on the integer grid");
    assert_eq!(labels.len(), rref.cols());
    let mut free = Vec::with_capacity(rref.free_cols.len());
    let mut vars = Vec::new();
    for &j in &rref.free_cols {
        let min_val = (0..rref.rank).map(|k| rref.entry_valuation(k, j)).min();
        let r = min_val.as_ref().and_then(integer_valuation).map(|v| -v);
        let unknown = match r {
            Some(r) if r >= 0 => {
                let first_var = vars.len();
                for power in 0..=r as usize {
                    vars.push(VarId {
                        column: labels[j],
                        power,
                    });
                }
                ColumnUnknown::Poly {
                    degree: r as usize,
                    first_var,
                }
            }
            _ => ColumnUnknown::FixedOne,
        };
        free.push(FreeColumn {
            position: j,
            label: labels[j],
            r,
            unknown,
        });
    }
    let n = rref.cols();
    let row_orders = (0..rref.rank)
        .map(|k| {
            rref.free_cols
                .iter()
                .map(|&j| rref.entry_valuation(k, j))
                .chain(std::iter::once(rref.entry_valuation(k, n)))
                .min()
                .unwrap_or(Valuation::Infinity)
        })
        .collect();
    UnknownLayout { free, row_orders, vars }
}
