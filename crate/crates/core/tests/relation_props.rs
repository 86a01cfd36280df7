use linrel::oracle::{self, rng_from_seed};
use linrel::{LinearRelation, ToleranceConfig};
use proptest::prelude::*;

fn relation(seed: u64, n1: usize, n2: usize) -> LinearRelation {
    oracle::random_relation_dims(&mut rng_from_seed(seed), n1, n2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>(), n1 in 1usize..6, n2 in 1usize..6) {
        let cfg = ToleranceConfig::default();
        let r = relation(seed, n1, n2);
        let star = r.adjoint();
        prop_assert_eq!((star.n1(), star.n2()), (n2, n1));
        prop_assert_eq!(r.dim() + star.dim(), n1 + n2);
        prop_assert!(star.adjoint().approx_eq(&r, &cfg));
    }

    #[test]
    fn adjoint_matches_oracle(seed in any::<u64>(), n1 in 1usize..6, n2 in 1usize..6) {
        let r = relation(seed, n1, n2);
        prop_assert!(oracle::same_graph(&r.adjoint(), &oracle::adjoint_definitional(&r), 1e-8));
    }

    #[test]
    fn parts_of_the_adjoint(seed in any::<u64>(), n1 in 1usize..6, n2 in 1usize..6) {
        let cfg = ToleranceConfig::default();
        let r = relation(seed, n1, n2);
        let s = r.adjoint();
        prop_assert!(s.ker(&cfg).approx_eq(&r.ran(&cfg).complement(), &cfg));
        prop_assert!(s.mul(&cfg).approx_eq(&r.dom(&cfg).complement(), &cfg));
        prop_assert!(s.dom(&cfg).approx_eq(&r.mul(&cfg).complement(), &cfg));
        prop_assert!(s.ran(&cfg).approx_eq(&r.ker(&cfg).complement(), &cfg));
    }

    #[test]
    fn inverse_commutes_with_adjoint(seed in any::<u64>(), n1 in 1usize..6, n2 in 1usize..6) {
        let cfg = ToleranceConfig::default();
        let r = relation(seed, n1, n2);
        prop_assert!(r.inverse().adjoint().approx_eq(&r.adjoint().inverse(), &cfg));
        prop_assert!(r.inverse().dom(&cfg).approx_eq(&r.ran(&cfg), &cfg));
    }

    #[test]
    fn selfadjoint_relations_classify(seed in any::<u64>(), g in 1usize..6) {
        let cfg = ToleranceConfig::default();
        let mut rng = rng_from_seed(seed);
        let theta = oracle::random_selfadjoint_relation(&mut rng, g, 0.5, 2.0);
        let report = theta.classify(&cfg);
        prop_assert!(report.is_symmetric && report.is_selfadjoint && report.is_nonnegative);
        prop_assert!(oracle::is_selfadjoint_direct(&theta, 1e-8));
        if let Some(lb) = theta.lower_bound(&cfg) {
            prop_assert!(lb >= 0.5 - 1e-9);
        }
    }

    #[test]
    fn non_selfadjoint_relations_are_detected(seed in any::<u64>(), g in 1usize..6) {
        let cfg = ToleranceConfig::default();
        let theta = oracle::random_non_selfadjoint(&mut rng_from_seed(seed), g);
        prop_assert!(!theta.classify(&cfg).is_selfadjoint);
        prop_assert!(!oracle::is_selfadjoint_direct(&theta, 1e-8));
    }

    #[test]
    fn sum_and_intersection_shapes(seed in any::<u64>(), n1 in 1usize..5, n2 in 1usize..5) {
        let cfg = ToleranceConfig::default();
        let mut rng = rng_from_seed(seed);
        let a = oracle::random_relation_dims(&mut rng, n1, n2);
        let b = oracle::random_relation_dims(&mut rng, n1, n2);
        let meet = a.intersection(&b, &cfg).unwrap();
        prop_assert!(meet.is_restriction_of(&a, &cfg) && meet.is_restriction_of(&b, &cfg));
        let sum = a.sum(&b, &cfg).unwrap();
        prop_assert!(sum.dom(&cfg).approx_eq(&a.dom(&cfg).join(&b.dom(&cfg), &cfg).unwrap(), &cfg));
        prop_assert!(sum.mul(&cfg).is_subspace_of(&sum.ran(&cfg), &cfg));
        prop_assert!(sum.adjoint().approx_eq(&a.adjoint().intersection(&b.adjoint(), &cfg).unwrap(), &cfg));
    }
}
