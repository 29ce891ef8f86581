use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::Matrix;
use super::rref::rref_solve;

/// `offset + span(basis)` over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpace {
    pub offset: Vec<BigRational>,
    pub basis: Vec<Vec<BigRational>>,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.offset.len()
    }

    /// `offset + sum_l params[l] * basis[l]`.
    pub fn point(&self, params: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(params.len(), self.basis.len());
        let mut x = self.offset.clone();
        for (p, w) in params.iter().zip(&self.basis) {
            if p.is_zero() {
                continue;
            }
            for (xi, wi) in x.iter_mut().zip(w) {
                if !wi.is_zero() {
                    *xi += p * wi;
                }
            }
        }
        x
    }
}

/// Solves `A y = b` over the rationals; `None` when infeasible.
///
/// The offset has every free variable at zero, and basis vector `l` sets
/// the `l`-th free variable (in column order) to one.
pub fn solve_affine(a: &Matrix<BigRational>, b: &[BigRational]) -> Option<AffineSpace> {
    let n = a.cols();
    let r = rref_solve(a, b);
    if !r.consistent {
        return None;
    }
    let mut offset = vec![BigRational::zero(); n];
    for (k, &p) in r.pivot_cols.iter().enumerate() {
        offset[p] = r.reduced_rhs[k].clone();
    }
    let basis = r
        .free_cols
        .iter()
        .map(|&f| {
            let mut w = vec![BigRational::zero(); n];
            w[f] = BigRational::from_integer(1.into());
            for (k, &p) in r.pivot_cols.iter().enumerate() {
                w[p] = -r.reduced_matrix[(k, f)].clone();
            }
            w
        })
        .collect();
    Some(AffineSpace { offset, basis })
}

/// Affine form `constant + sum coeffs[v] * y_v` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub constant: BigRational,
    /// Variable index to coefficient; zero coefficients are never stored.
    pub coeffs: BTreeMap<usize, BigRational>,
}

impl LinearForm {
    pub fn constant(c: BigRational) -> Self {
        LinearForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    /// The form `y_v`.
    pub fn variable(v: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(v, BigRational::from_integer(1.into()));
        LinearForm {
            constant: BigRational::zero(),
            coeffs,
        }
    }

    pub fn add_term(&mut self, v: usize, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(v).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    /// True for the form that is zero everywhere.
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn eval(&self, y: &[BigRational]) -> BigRational {
        self.constant.clone() + self.linear_part(y)
    }

    /// The form without its constant, applied to `y`.
    pub fn linear_part(&self, y: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .map(|(&v, c)| c * &y[v])
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Writes the form with a caller-provided variable namer.
    pub fn display_with<'a>(&'a self, name: &'a dyn Fn(usize) -> String) -> impl fmt::Display + 'a {
        DisplayForm { form: self, name }
    }
}

struct DisplayForm<'a> {
    form: &'a LinearForm,
    name: &'a dyn Fn(usize) -> String,
}

impl fmt::Display for DisplayForm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&v, c) in &self.form.coeffs {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if mag != BigRational::from_integer(1.into()) {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", (self.name)(v))?;
            first = false;
        }
        let c = &self.form.constant;
        if first {
            write!(f, "{c}")
        } else if c.is_zero() {
            Ok(())
        } else if c < &BigRational::zero() {
            write!(f, " - {}", -c.clone())
        } else {
            write!(f, " + {c}")
        }
    }
}

/// Writes a list of forms as the rows of `A y = b`.
pub fn forms_to_system(forms: &[LinearForm], num_vars: usize) -> (Matrix<BigRational>, Vec<BigRational>) {
    let rows = forms
        .iter()
        .map(|f| {
            let mut row = vec![BigRational::zero(); num_vars];
            for (&v, c) in &f.coeffs {
                row[v] = c.clone();
            }
            row
        })
        .collect();
    let a = Matrix::with_cols(num_vars, rows).expect("rows have num_vars entries");
    let b = forms.iter().map(|f| -f.constant.clone()).collect();
    (a, b)
}

/// True iff `form` is zero at every point of `space`.
pub fn vanishes_identically(form: &LinearForm, space: &AffineSpace) -> bool {
    if let Some(v) = form.max_var() {
        assert!(v < space.ambient_dim(), "form variable y_{v} outside the space");
    }
    form.eval(&space.offset).is_zero() && space.basis.iter().all(|w| form.linear_part(w).is_zero())
}
