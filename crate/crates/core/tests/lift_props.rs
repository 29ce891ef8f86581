use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use troplift::gen::{gen_member, gen_random, gen_random_point, perturb_point, GenConfig};
use troplift::instance::TropPoint;
use troplift::lift::{decide, decide_traced, verify_witness, LiftResult};
use troplift::scalar::Valuation;

fn config(max_n: usize) -> impl Strategy<Value = GenConfig> {
    (any::<u64>(), 1usize..=4, 0usize..=max_n, 1u64..=3, 1usize..=3).prop_map(|(seed, m, extra, grid_den, terms)| GenConfig {
        grid_den,
        terms_per_entry: terms,
        ..GenConfig::new(seed, m, m + extra)
    })
}

/// Random point, planted point, or a planted point nudged off its lift.
fn case(cfg: &GenConfig, kind: u8) -> (troplift::instance::Instance, TropPoint) {
    match kind {
        0 => (gen_random(cfg), gen_random_point(cfg)),
        1 => {
            let (inst, v, _) = gen_member(cfg);
            (inst, v)
        }
        _ => {
            let (inst, v, _) = gen_member(cfg);
            let j = v.coords().iter().position(Valuation::is_finite).unwrap();
            let delta = BigRational::new(BigInt::from(1), BigInt::from(cfg.grid_den));
            (inst, perturb_point(&v, j, &delta))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn member_witnesses_verify(cfg in config(4), kind in 0u8..3) {
        let (inst, v) = case(&cfg, kind);
        if let LiftResult::Member { witness } = decide(&inst, &v).unwrap() {
            prop_assert!(verify_witness(&inst, &v, &witness));
            prop_assert_eq!(TropPoint::of(&witness), v);
        }
    }

    #[test]
    fn planted_points_are_members(cfg in config(8)) {
        let (inst, v, x) = gen_member(&cfg);
        prop_assert!(verify_witness(&inst, &v, &x));
        prop_assert!(decide(&inst, &v).unwrap().is_member());
    }

    #[test]
    fn sweep_stays_within_bound(cfg in config(5), kind in 0u8..3) {
        let (inst, v) = case(&cfg, kind);
        let trace = decide_traced(&inst, &v).unwrap();
        for sub in &trace.subsystems {
            if let (Some(s), Some(forms)) = (&sub.sweep, &sub.forms) {
                prop_assert_eq!(s.bound, forms.family.len() as u64 * s.dim as u64 + 1);
                prop_assert!(s.p >= 1 && s.p <= s.bound);
            }
        }
    }

    #[test]
    fn grid_refinement_is_equivariant(cfg in config(4), kind in 0u8..3, n in 2u64..=3) {
        let (inst, v) = case(&cfg, kind);
        let before = decide(&inst, &v).unwrap().is_member();
        let after = decide(&inst.regrid(n), &v.scale(n)).unwrap().is_member();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn column_permutation_is_equivariant(cfg in config(4), kind in 0u8..3, rot in 0usize..8, flip in any::<bool>()) {
        let (inst, v) = case(&cfg, kind);
        let n = inst.n();
        let mut perm: Vec<usize> = (0..n).map(|k| (k + rot) % n).collect();
        if flip {
            perm.reverse();
        }
        let before = decide(&inst, &v).unwrap().is_member();
        let after = decide(&inst.permute_cols(&perm), &v.permute(&perm)).unwrap();
        prop_assert_eq!(before, after.is_member());
        if let Some(x) = after.witness() {
            prop_assert!(verify_witness(&inst.permute_cols(&perm), &v.permute(&perm), x));
        }
    }
}
