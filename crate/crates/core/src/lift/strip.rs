use num_rational::BigRational;

use crate::instance::{Instance, TropPoint};
use crate::scalar::Valuation;

/// An instance with every infinite coordinate removed.
#[derive(Clone, Debug)]
pub struct Stripped {
    pub instance: Instance,
    pub point: Vec<BigRational>,
    /// Original index of each remaining column.
    pub kept: Vec<usize>,
    /// Original columns whose lift coordinate is pinned to zero.
    pub pinned: Vec<usize>,
}

/// Deletes the columns with `v_j = inf`; those coordinates of any lift are
/// zero, so they drop out of `A x = b`.
pub fn strip_infinite(inst: &Instance, v: &TropPoint) -> Stripped {
    assert_eq!(v.len(), inst.n(), "point length must match column count");
    let mut kept = Vec::new();
    let mut pinned = Vec::new();
    let mut point = Vec::new();
    for (j, c) in v.coords().iter().enumerate() {
        match c {
            Valuation::Finite(x) => {
                kept.push(j);
                point.push(x.clone());
            }
            Valuation::Infinity => pinned.push(j),
        }
    }
    Stripped {
        instance: inst.select_cols(&kept),
        point,
        kept,
        pinned,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::scalar::rational::rational_from_i64 as q;
    use crate::scalar::PuiseuxRational;

    fn inst(a: Vec<Vec<i64>>, b: Vec<i64>) -> Instance {
        let a = a.into_iter().map(|r| r.into_iter().map(PuiseuxRational::from).collect()).collect();
        Instance::new(Matrix::from_rows(a).unwrap(), b.into_iter().map(PuiseuxRational::from).collect()).unwrap()
    }

    #[test]
    fn drops_infinite_column() {
        let s = strip_infinite(
            &inst(vec![vec![1, 1]], vec![1]),
            &TropPoint::new(vec![Valuation::Finite(q(0, 1)), Valuation::Infinity]),
        );
        assert_eq!(s.instance, inst(vec![vec![1]], vec![1]));
        assert_eq!(s.point, vec![q(0, 1)]);
        assert_eq!(s.kept, vec![0]);
        assert_eq!(s.pinned, vec![1]);
    }

    #[test]
    fn finite_point_is_untouched() {
        let i = inst(vec![vec![1, 2], vec![3, 4]], vec![1, 0]);
        let s = strip_infinite(&i, &TropPoint::finite(vec![q(1, 2), q(-3, 1)]));
        assert_eq!(s.instance, i);
        assert!(s.pinned.is_empty());
    }

    #[test]
    fn all_infinite_leaves_no_columns() {
        let s = strip_infinite(
            &inst(vec![vec![1, 1]], vec![1]),
            &TropPoint::new(vec![Valuation::Infinity, Valuation::Infinity]),
        );
        assert_eq!(s.instance.n(), 0);
        assert_eq!(s.instance.m(), 1);
        assert_eq!(s.pinned, vec![0, 1]);
    }
}
