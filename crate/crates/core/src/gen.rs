//! Seeded generation of random systems, planted members and nearby points.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, TropPoint};
use crate::linalg::Matrix;
use crate::scalar::{LaurentPoly, PuiseuxRational, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    /// Entries get `0..=terms_per_entry` terms.
    pub terms_per_entry: usize,
    /// Exponents are `k / grid_den` with `exp_lo <= k <= exp_hi`.
    pub exp_lo: i64,
    pub exp_hi: i64,
    pub grid_den: u64,
    /// Coefficients are `p/r` with `0 < |p|, r <= coeff_bound`.
    pub coeff_bound: u32,
}

impl GenConfig {
    pub fn new(seed: u64, m: usize, n: usize) -> Self {
        GenConfig {
            seed,
            m,
            n,
            terms_per_entry: 2,
            exp_lo: -3,
            exp_hi: 3,
            grid_den: 1,
            coeff_bound: 5,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.m > self.n {
            return Err(format!("m = {} exceeds n = {}", self.m, self.n));
        }
        if self.exp_lo > self.exp_hi {
            return Err(format!("empty exponent range [{}, {}]", self.exp_lo, self.exp_hi));
        }
        if self.grid_den == 0 || self.coeff_bound == 0 {
            return Err("grid_den and coeff_bound must be positive".into());
        }
        Ok(())
    }

    // independent streams so that, e.g., the planted vector does not shift
    // when the matrix generator changes
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

fn coefficient(cfg: &GenConfig, rng: &mut impl Rng) -> BigRational {
    let b = cfg.coeff_bound as i64;
    let mut p = rng.gen_range(1..=b);
    if rng.gen_bool(0.5) {
        p = -p;
    }
    let r = rng.gen_range(1..=b);
    BigRational::new(BigInt::from(p), BigInt::from(r))
}

fn laurent(cfg: &GenConfig, rng: &mut impl Rng, terms: usize) -> PuiseuxRational {
    let terms: Vec<(i64, BigRational)> = (0..terms)
        .map(|_| (rng.gen_range(cfg.exp_lo..=cfg.exp_hi), coefficient(cfg, rng)))
        .collect();
    LaurentPoly::from_grid_terms(cfg.grid_den, terms).into()
}

fn matrix(cfg: &GenConfig, rng: &mut impl Rng) -> Matrix<PuiseuxRational> {
    Matrix::from_fn(cfg.m, cfg.n, |_, _| {
        let terms = rng.gen_range(0..=cfg.terms_per_entry);
        laurent(cfg, rng, terms)
    })
}

/// Random `A` and `b`.
pub fn gen_random(cfg: &GenConfig) -> Instance {
    let mut rng = cfg.rng(0);
    let a = matrix(cfg, &mut rng);
    let b = (0..cfg.m)
        .map(|_| {
            let terms = rng.gen_range(0..=cfg.terms_per_entry);
            laurent(cfg, &mut rng, terms)
        })
        .collect();
    Instance::new(a, b).expect("rhs has m entries")
}

/// Random `A`, a planted vector `x*` of Laurent polynomials, `b = A x*` and
/// `v = val(x*)`. About one coordinate in ten is zero.
pub fn gen_member(cfg: &GenConfig) -> (Instance, TropPoint, Vec<PuiseuxRational>) {
    let mut rng = cfg.rng(1);
    let a = matrix(cfg, &mut rng);
    let terms = cfg.terms_per_entry.max(1);
    let mut x: Vec<PuiseuxRational> = (0..cfg.n)
        .map(|_| {
            if rng.gen_ratio(1, 10) {
                PuiseuxRational::zero()
            } else {
                let k = rng.gen_range(1..=terms);
                laurent(cfg, &mut rng, k)
            }
        })
        .collect();
    if cfg.n > 0 && x.iter().all(PuiseuxRational::is_zero) {
        let j = rng.gen_range(0..cfg.n);
        x[j] = laurent(cfg, &mut rng, 1);
    }
    let b = a.mul_vec(&x);
    let v = TropPoint::of(&x);
    (Instance::new(a, b).expect("rhs has m entries"), v, x)
}

/// Random point on the configured grid; about one coordinate in ten is
/// infinite.
pub fn gen_random_point(cfg: &GenConfig) -> TropPoint {
    let mut rng = cfg.rng(2);
    let g = BigInt::from(cfg.grid_den);
    TropPoint::new(
        (0..cfg.n)
            .map(|_| {
                if rng.gen_ratio(1, 10) {
                    Valuation::Infinity
                } else {
                    let k = rng.gen_range(cfg.exp_lo..=cfg.exp_hi);
                    Valuation::Finite(BigRational::new(BigInt::from(k), g.clone()))
                }
            })
            .collect(),
    )
}

/// `v` with `v_j` moved by `delta`.
pub fn perturb_point(v: &TropPoint, j: usize, delta: &BigRational) -> TropPoint {
    let mut coords = v.coords().to_vec();
    match &coords[j] {
        Valuation::Finite(x) => coords[j] = Valuation::Finite(x + delta),
        Valuation::Infinity => panic!("cannot perturb an infinite coordinate"),
    }
    TropPoint::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::verify_witness;
    use crate::scalar::rational::rational_from_i64 as q;

    #[test]
    fn deterministic() {
        let cfg = GenConfig::new(7, 3, 5);
        assert_eq!(gen_random(&cfg), gen_random(&cfg));
        assert_eq!(gen_member(&cfg), gen_member(&cfg));
        assert_ne!(gen_random(&cfg), gen_random(&GenConfig::new(8, 3, 5)));
    }

    #[test]
    fn zero_entries_occur() {
        let inst = gen_random(&GenConfig::new(1, 4, 6));
        assert!(inst.a().to_rows().iter().flatten().any(PuiseuxRational::is_zero));
    }

    #[test]
    fn half_grid() {
        let cfg = GenConfig {
            grid_den: 2,
            ..GenConfig::new(3, 3, 4)
        };
        let inst = gen_random(&cfg);
        for x in inst.a().to_rows().iter().flatten() {
            assert!(2 % x.grid() == 0);
        }
    }

    #[test]
    fn planted_vector_verifies() {
        for seed in 0..20 {
            let (inst, v, x) = gen_member(&GenConfig::new(seed, 3, 6));
            assert!(verify_witness(&inst, &v, &x));
        }
    }

    #[test]
    fn perturb() {
        let v = TropPoint::finite(vec![q(0, 1), q(0, 1)]);
        assert_eq!(perturb_point(&v, 0, &q(0, 1)), v);
        let w = perturb_point(&perturb_point(&v, 0, &q(3, 1)), 1, &q(-1, 1));
        assert_eq!(w, TropPoint::finite(vec![q(3, 1), q(-1, 1)]));
    }
}
