use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::instance::Instance;
use crate::linalg::Matrix;
use crate::scalar::PuiseuxRational;

/// The part of the system living on one congruence class of coordinates,
/// rescaled so that the target valuation of every unknown is zero.
///
/// With `x_j = t^(shifts[j]) * y_j` (exponents in the regridded variable),
/// row `i` of the class reads `sum_j a[i][j] y_j = rhs[i]` after both sides
/// are multiplied by `t^(-residue)`. Every exponent in `a` and `rhs` is an
/// integer.
#[derive(Clone, Debug)]
pub struct Subsystem {
    /// Common fractional part of the class's scaled coordinates, in `[0, 1)`.
    pub residue: BigRational,
    /// Positions of the class's columns in the instance that was partitioned.
    pub columns: Vec<usize>,
    pub a: Matrix<PuiseuxRational>,
    /// `b` for the integer class, zero otherwise.
    pub rhs: Vec<PuiseuxRational>,
    /// Scaled coordinate `v_j` of each class column.
    pub shifts: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub struct Partition {
    /// Every exponent of the instance and `v` was multiplied by this.
    pub grid_factor: u64,
    pub subsystems: Vec<Subsystem>,
    /// `b != 0` but no class has residue zero, so no lift can exist.
    pub empty_class_with_rhs: bool,
}

/// Regrids to integer exponents, splits columns by the fractional part of
/// `v_j`, and rescales each class to target zero. `v` must be finite.
pub fn normalize_and_partition(inst: &Instance, v: &[BigRational]) -> Partition {
    assert_eq!(v.len(), inst.n(), "point length must match column count");
    let grid_factor = inst.grid();
    let regridded = inst.regrid(grid_factor);
    let factor = BigRational::from_integer(BigInt::from(grid_factor));
    let scaled: Vec<BigRational> = v.iter().map(|x| x * &factor).collect();

    let mut classes: BTreeMap<BigRational, Vec<usize>> = BTreeMap::new();
    for (j, x) in scaled.iter().enumerate() {
        let residue = x - x.floor();
        classes.entry(residue).or_default().push(j);
    }
    let empty_class_with_rhs = !inst.is_homogeneous() && !classes.contains_key(&BigRational::zero());

    let m = inst.m();
    let subsystems = classes
        .into_iter()
        .map(|(residue, columns)| {
            let shifts: Vec<BigRational> = columns.iter().map(|&j| scaled[j].clone()).collect();
            let a = Matrix::from_fn(m, columns.len(), |i, k| {
                regridded.a()[(i, columns[k])].scale_by_monomial(&(&shifts[k] - &residue))
            });
            let rhs = if residue.is_zero() {
                regridded.b().to_vec()
            } else {
                vec![PuiseuxRational::zero(); m]
            };
            Subsystem {
                residue,
                columns,
                a,
                rhs,
                shifts,
            }
        })
        .collect();
    Partition {
        grid_factor,
        subsystems,
        empty_class_with_rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rational_from_i64 as q;
    use crate::scalar::LaurentPoly;

    fn poly(t: &[(i64, i64)]) -> PuiseuxRational {
        LaurentPoly::from_grid_terms(1, t.iter().map(|&(k, c)| (k, q(c, 1)))).into()
    }

    fn e1() -> Instance {
        Instance::new(
            Matrix::from_rows(vec![vec![poly(&[(0, 1)]), poly(&[(1, 1)])]]).unwrap(),
            vec![poly(&[(0, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn classes_by_fractional_part() {
        let inst = Instance::new(
            Matrix::from_rows(vec![vec![poly(&[(0, 1)]); 4]]).unwrap(),
            vec![poly(&[(0, 1)])],
        )
        .unwrap();
        let p = normalize_and_partition(&inst, &[q(1, 2), q(3, 2), q(0, 1), q(2, 1)]);
        assert_eq!(p.subsystems.len(), 2);
        assert_eq!(p.subsystems[0].residue, q(0, 1));
        assert_eq!(p.subsystems[0].columns, vec![2, 3]);
        assert_eq!(p.subsystems[0].rhs, vec![poly(&[(0, 1)])]);
        assert_eq!(p.subsystems[1].residue, q(1, 2));
        assert_eq!(p.subsystems[1].columns, vec![0, 1]);
        assert_eq!(p.subsystems[1].rhs, vec![PuiseuxRational::zero()]);
        assert!(!p.empty_class_with_rhs);
    }

    #[test]
    fn e1_scaled_to_target_zero() {
        let p = normalize_and_partition(&e1(), &[q(3, 1), q(-1, 1)]);
        assert_eq!(p.subsystems.len(), 1);
        let s = &p.subsystems[0];
        assert_eq!(s.a.row(0), &[poly(&[(3, 1)]), poly(&[(0, 1)])]);
        assert_eq!(s.rhs, vec![poly(&[(0, 1)])]);
    }

    #[test]
    fn half_integer_point_with_rhs_has_no_home() {
        let inst = Instance::new(
            Matrix::from_rows(vec![vec![poly(&[(0, 1)]), poly(&[(0, 1)])]]).unwrap(),
            vec![poly(&[(0, 1)])],
        )
        .unwrap();
        let p = normalize_and_partition(&inst, &[q(1, 2), q(1, 2)]);
        assert_eq!(p.subsystems.len(), 1);
        assert_eq!(p.subsystems[0].residue, q(1, 2));
        assert!(p.empty_class_with_rhs);
        // the class row is shifted back onto the integer grid
        assert_eq!(p.subsystems[0].a.row(0), &[poly(&[(0, 1)]), poly(&[(0, 1)])]);
    }

    #[test]
    fn fractional_entries_are_regridded() {
        let half: PuiseuxRational = LaurentPoly::from_grid_terms(2, [(1, q(1, 1))]).into();
        let inst = Instance::new(
            Matrix::from_rows(vec![vec![half, poly(&[(0, 1)])]]).unwrap(),
            vec![poly(&[(0, 1)])],
        )
        .unwrap();
        let p = normalize_and_partition(&inst, &[q(0, 1), q(1, 4)]);
        assert_eq!(p.grid_factor, 2);
        // scaled v = (0, 1/2): two classes
        assert_eq!(p.subsystems.len(), 2);
        assert_eq!(p.subsystems[0].a.row(0), &[poly(&[(1, 1)])]);
        assert_eq!(p.subsystems[1].shifts, vec![q(1, 2)]);
        for s in &p.subsystems {
            for x in s.a.to_rows().iter().flatten().chain(&s.rhs) {
                assert_eq!(x.grid(), 1);
            }
        }
    }
}
