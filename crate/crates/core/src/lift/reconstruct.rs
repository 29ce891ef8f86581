use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::layout::{ColumnUnknown, UnknownLayout};
use super::partition::Subsystem;
use crate::linalg::fraction_free::int_to_laurent;
use crate::linalg::PolyRref;
use crate::scalar::intpoly::IntPoly;
use crate::scalar::PuiseuxRational;

/// Builds the class's coordinates from the chosen unknowns and undoes the
/// column scaling and the grid change. Entry `k` belongs to
/// `sub.columns[k]`.
pub fn reconstruct_witness(
    sub: &Subsystem,
    rref: &PolyRref,
    layout: &UnknownLayout,
    grid_factor: u64,
    y: &[BigRational],
) -> Vec<PuiseuxRational> {
    let n = rref.cols();
    // clear the denominators of y once: x_j = cleared[j] / delta
    let mut delta = BigInt::one();
    for c in y {
        delta = delta.lcm(c.denom());
    }
    let scaled = |c: &BigRational| (c * BigRational::from_integer(delta.clone())).to_integer();
    let mut cleared: Vec<Option<IntPoly>> = vec![None; n];
    for col in &layout.free {
        let x = match col.unknown {
            ColumnUnknown::FixedOne => IntPoly::constant(delta.clone()),
            ColumnUnknown::Poly { degree, first_var } => {
                IntPoly::from_coeffs(y[first_var..=first_var + degree].iter().map(scaled).collect())
            }
        };
        cleared[col.position] = Some(x);
    }
    let delta_poly = IntPoly::constant(delta.clone());
    let denom = int_to_laurent(rref.grid, &rref.denom.mul(&delta_poly));
    let mut coords: Vec<PuiseuxRational> = vec![PuiseuxRational::zero(); n];
    for (k, &p) in rref.pivot_cols.iter().enumerate() {
        let row = &rref.rows[k];
        let mut num = row[n].mul(&delta_poly);
        for col in &layout.free {
            if row[col.position].is_zero() {
                continue;
            }
            let x = cleared[col.position].as_ref().expect("free column assigned");
            num = num.sub(&row[col.position].mul(x));
        }
        coords[p] = PuiseuxRational::new(int_to_laurent(rref.grid, &num), denom.clone()).expect("denominator is nonzero");
    }
    let delta_inv = BigRational::new(BigInt::one(), delta);
    for (j, x) in cleared.into_iter().enumerate() {
        if let Some(x) = x {
            coords[j] = int_to_laurent(rref.grid, &x).scale(&delta_inv).into();
        }
    }
    let undo = BigRational::new(BigInt::from(1), BigInt::from(grid_factor));
    coords
        .iter()
        .zip(&sub.shifts)
        .map(|(x, v)| x.scale_by_monomial(v).regrid_by(&undo))
        .collect()
}
