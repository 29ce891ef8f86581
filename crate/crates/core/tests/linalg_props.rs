use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use troplift::gen::{gen_random, GenConfig};
use troplift::linalg::{bareiss_rref, fraction_free_rref, rref_solve, rref_solve_series, solve_affine, Matrix};
use troplift::scalar::PuiseuxRational;

fn small_config() -> impl Strategy<Value = GenConfig> {
    (any::<u64>(), 1usize..=4, 0usize..=3, 1u64..=3, 1usize..=3).prop_map(|(seed, m, extra, grid_den, terms)| GenConfig {
        grid_den,
        terms_per_entry: terms,
        ..GenConfig::new(seed, m, m + extra)
    })
}

fn rational_system() -> impl Strategy<Value = (Matrix<BigRational>, Vec<BigRational>)> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), m),
            prop::collection::vec(-3i64..=3, m),
        )
            .prop_map(|(rows, b)| {
                let r = |x: i64| BigRational::from_integer(BigInt::from(x));
                let rows = rows.into_iter().map(|row| row.into_iter().map(r).collect()).collect();
                (Matrix::from_rows(rows).unwrap(), b.into_iter().map(r).collect())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn series_reduction_matches_generic(cfg in small_config()) {
        let inst = gen_random(&cfg);
        let generic = rref_solve(inst.a(), inst.b());
        let series = rref_solve_series(inst.a(), inst.b());
        prop_assert_eq!(&generic.pivot_cols, &series.pivot_cols);
        prop_assert_eq!(generic.consistent, series.consistent);
        prop_assert_eq!(&generic.reduced_matrix, &series.reduced_matrix);
        // below the rank only zero-ness is defined: the series route marks
        // an inconsistent row with one
        prop_assert_eq!(&generic.reduced_rhs[..generic.rank], &series.reduced_rhs[..series.rank]);
        for (g, s) in generic.reduced_rhs.iter().zip(&series.reduced_rhs).skip(generic.rank) {
            prop_assert_eq!(g.is_zero(), s.is_zero());
        }
    }

    #[test]
    fn modular_route_matches_bareiss(cfg in small_config()) {
        let inst = gen_random(&cfg);
        let fast = fraction_free_rref(inst.a(), inst.b());
        let slow = bareiss_rref(inst.a(), inst.b());
        prop_assert_eq!(&fast.pivot_cols, &slow.pivot_cols);
        prop_assert_eq!(fast.consistent, slow.consistent);
        for k in 0..fast.rank {
            for j in 0..=inst.n() {
                prop_assert_eq!(fast.entry(k, j), slow.entry(k, j));
            }
        }
    }

    #[test]
    fn reduced_rows_span_the_system(cfg in small_config()) {
        // every original row is the combination of reduced rows given by
        // its pivot-column entries
        let inst = gen_random(&cfg);
        let r = rref_solve_series(inst.a(), inst.b());
        prop_assume!(r.consistent);
        for i in 0..inst.m() {
            for j in 0..inst.n() {
                let mut acc = PuiseuxRational::zero();
                for (k, &p) in r.pivot_cols.iter().enumerate() {
                    acc = &acc + &(&inst.a()[(i, p)] * &r.reduced_matrix[(k, j)]);
                }
                prop_assert_eq!(&acc, &inst.a()[(i, j)]);
            }
        }
    }

    #[test]
    fn affine_solutions_solve((a, b) in rational_system(), params in prop::collection::vec(-4i64..=4, 5)) {
        let Some(space) = solve_affine(&a, &b) else {
            prop_assert!(!rref_solve(&a, &b).consistent);
            return Ok(());
        };
        let p: Vec<BigRational> = params[..space.dim()].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let x = space.point(&p);
        for i in 0..a.rows() {
            let lhs: BigRational = (0..a.cols()).map(|j| &a[(i, j)] * &x[j]).sum();
            prop_assert_eq!(&lhs, &b[i]);
        }
    }
}
