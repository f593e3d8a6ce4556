use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cohom::algebra::DEFAULT_CELL_BUDGET as B;
use cohom::gmodules::random_module;
use cohom::group_homology::{compute, conjugation_pair_action, Method, Variance};
use cohom::groups::{abelian_from_factors, abelianization};
use cohom::harness::{parse_scenarios, run, Claim, RunOptions, Scenario, Status};
use cohom::{Big, RingSpec, Scalar};

fn factors() -> impl Strategy<Value = Vec<u64>> {
    prop_oneof![
        (2u64..=8).prop_map(|n| vec![n]),
        Just(vec![2, 2]),
        Just(vec![2, 4]),
        Just(vec![3, 3]),
        Just(vec![2, 2, 2]),
    ]
}

fn ring() -> impl Strategy<Value = RingSpec> {
    prop_oneof![Just(RingSpec::Integers), Just(RingSpec::with_inverted(2)), Just(RingSpec::with_inverted(3))]
}

/// Panics on a disagreement; overflow is returned so the caller can retry.
fn bar_vs_product<T: Scalar>(f: &[u64], r: RingSpec, seed: u64, n: usize) -> cohom::Result<()> {
    let g = abelian_from_factors(f)?;
    let m = random_module::<T, _>(&g, r, &mut ChaCha8Rng::seed_from_u64(seed))?;
    for v in [Variance::Homology, Variance::Cohomology] {
        let bar = compute(&m, n, v, Method::Bar, B)?.summary;
        let prod = compute(&m, n, v, Method::Product, B)?.summary;
        assert!(bar.module().same_structure(prod.module()), "{v:?} {n}: {} vs {}", bar.module(), prod.module());
    }
    Ok(())
}

fn inner_is_identity<T: Scalar>(seed: u64, g0: usize) -> cohom::Result<()> {
    let g = cohom::groups::symmetric(3)?;
    let ab = abelianization::<T>(&g)?;
    let m = random_module::<T, _>(&ab.quotient, RingSpec::Integers, &mut ChaCha8Rng::seed_from_u64(seed))?
        .pullback(&ab.projection)?;
    for v in [Variance::Homology, Variance::Cohomology] {
        assert!(conjugation_pair_action(&m, g0, 1, v, B)?.is_identity()?);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn bar_agrees_with_product_resolution(f in factors(), r in ring(), seed in 0u64..1000, n in 0usize..=2) {
        match bar_vs_product::<i64>(&f, r, seed, n) {
            Err(cohom::Error::Overflow) => bar_vs_product::<Big>(&f, r, seed, n).unwrap(),
            res => res.unwrap(),
        }
    }

    #[test]
    fn machine_and_big_scalars_agree(f in factors(), seed in 0u64..1000, n in 0usize..=2) {
        let g = abelian_from_factors(&f).unwrap();
        let small = random_module::<i64, _>(&g, RingSpec::Integers, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let big = random_module::<Big, _>(&g, RingSpec::Integers, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let a = compute(&small, n, Variance::Homology, Method::Auto, B).unwrap().summary;
        let b = compute(&big, n, Variance::Homology, Method::Auto, B).unwrap().summary;
        let a: Vec<String> = a.invariant_factors().iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = b.invariant_factors().iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inner_action_on_pulled_back_modules(seed in 0u64..1000, g0 in 0usize..6) {
        match inner_is_identity::<i64>(seed, g0) {
            Err(cohom::Error::Overflow) => inner_is_identity::<Big>(seed, g0).unwrap(),
            res => res.unwrap(),
        }
    }

    #[test]
    fn reports_are_reproducible(seed in 1u64..500) {
        let mut s = Scenario::new("p", Claim::Lemma11);
        s.group = Some(cohom::harness::GroupSpec::from_factors(&[2, 3]));
        s.ring = Some(RingSpec::with_inverted(6).into());
        s.seed = Some(seed);
        let a = run(&s, &RunOptions::default()).unwrap();
        let b = run(&s, &RunOptions::default()).unwrap();
        prop_assert_eq!(a.status, Status::Pass);
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn scenarios_round_trip(seed in proptest::option::of(0u64..100), degree in proptest::option::of(0usize..4)) {
        let mut s = Scenario::new("x/y", Claim::Uct);
        s.group = Some(cohom::harness::GroupSpec::Symmetric(3));
        s.seed = seed;
        s.degree = degree;
        let text = serde_json::to_string(&vec![s.clone()]).unwrap();
        let back = parse_scenarios(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back[0]).unwrap(), serde_json::to_string(&s).unwrap());
    }
}
