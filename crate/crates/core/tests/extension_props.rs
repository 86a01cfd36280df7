use linrel::extension::LiftBundle;
use linrel::oracle::{self, rng_from_seed};
use linrel::ToleranceConfig;
use proptest::prelude::*;

fn bundle(seed: u64, n1: usize, n2: usize) -> LiftBundle {
    let r = oracle::random_relation_dims(&mut rng_from_seed(seed), n1, n2);
    LiftBundle::new(&r, &ToleranceConfig::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lift_checks_hold(seed in any::<u64>(), n1 in 1usize..5, n2 in 1usize..5) {
        let cfg = ToleranceConfig::default();
        let b = bundle(seed, n1, n2);
        let checks = b.verify(&cfg).unwrap();
        prop_assert!(checks.all_hold(), "{:?}", checks);
        prop_assert!(b.s0_adjoint_decomposition_check(&cfg).unwrap());
    }

    #[test]
    fn distinguished_extensions_are_selfadjoint(seed in any::<u64>(), n1 in 1usize..5, n2 in 1usize..5) {
        let cfg = ToleranceConfig::default();
        let b = bundle(seed, n1, n2);
        for a in [&b.h, &b.k, &b.s_f, &b.s_k] {
            prop_assert!(oracle::is_selfadjoint_direct(a, 1e-8));
            prop_assert!(b.is_extension(a, &cfg));
        }
        for a in [&b.s_f, &b.s_k] {
            prop_assert!(a.classify(&cfg).is_nonnegative);
        }
    }

    #[test]
    fn nonnegative_parameters_give_nonnegative_extensions(seed in any::<u64>(), n1 in 1usize..5, n2 in 1usize..5) {
        let cfg = ToleranceConfig::default();
        let b = bundle(seed, n1, n2);
        let g0 = b.g0.dim();
        let theta = oracle::random_selfadjoint_relation(&mut rng_from_seed(seed ^ 0x5eed), g0, 0.0, 2.0);
        let a = b.nonneg_extension(&theta, &cfg).unwrap();
        let report = a.classify(&cfg);
        prop_assert!(report.is_selfadjoint && report.is_nonnegative);
        let order = b.krein_order_check(&a, &cfg).unwrap();
        prop_assert!(order.holds, "{:?}", order);
    }

    #[test]
    fn extremal_family_is_extremal(seed in any::<u64>(), n1 in 1usize..5, n2 in 1usize..5, d in 0usize..5) {
        let cfg = ToleranceConfig::default();
        let b = bundle(seed, n1, n2);
        let g0 = b.g0.dim();
        let l = oracle::random_subspace(&mut rng_from_seed(seed ^ 0xe), g0, d.min(g0));
        let a = b.extremal_family(&l, &cfg).unwrap();
        prop_assert!(b.is_extremal(&a, &cfg).unwrap());
        prop_assert!(a.classify(&cfg).is_selfadjoint);
    }
}
