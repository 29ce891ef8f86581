use num_bigint::BigInt;
use num_rational::BigRational;
use troplift::gen::{gen_member, gen_random, gen_random_point, perturb_point, GenConfig};
use troplift::instance::{Instance, TropPoint};
use troplift::lift::{decide, verify_witness};
use troplift::oracle::{member_oracle, DEFAULT_MAX_COLS};
use troplift::scalar::Valuation;

fn cfg(seed: u64) -> GenConfig {
    let m = 1 + (seed % 3) as usize;
    let n = m + 1 + (seed / 3 % 4) as usize;
    GenConfig {
        grid_den: 1 + seed % 2,
        ..GenConfig::new(seed, m, n)
    }
}

fn agree(inst: &Instance, v: &TropPoint) -> bool {
    let got = decide(inst, v).unwrap();
    if let Some(x) = got.witness() {
        assert!(verify_witness(inst, v, x));
    }
    let want = member_oracle(inst, v, DEFAULT_MAX_COLS).unwrap();
    if got.is_member() != want {
        eprintln!("disagree: A={:?}\nb={:?}\nv={v}\ndecide={got:?} oracle={want}", inst.a(), inst.b());
    }
    got.is_member() == want
}

#[test]
fn random_points_agree() {
    for seed in 0..60 {
        let c = cfg(seed);
        assert!(agree(&gen_random(&c), &gen_random_point(&c)), "seed {seed}");
    }
}

#[test]
fn planted_and_perturbed_agree() {
    for seed in 0..60 {
        let c = cfg(seed);
        let (inst, v, _) = gen_member(&c);
        assert!(agree(&inst, &v), "seed {seed}");
        let j = (seed as usize) % v.len();
        if let Valuation::Finite(_) = v.coords()[j] {
            let p = perturb_point(&v, j, &BigRational::from_integer(BigInt::from(1)));
            assert!(agree(&inst, &p), "perturbed seed {seed}");
        }
    }
}
