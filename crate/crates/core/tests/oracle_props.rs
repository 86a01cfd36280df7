use linrel::oracle::{self, random_cmat, rng_from_seed};
use linrel::{linalg, Subspace, ToleranceConfig};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_schmidt_agrees_with_svd_span(seed in any::<u64>(), n in 1usize..8, k in 0usize..6, r in 0usize..6) {
        let cfg = ToleranceConfig::default();
        let mut rng = rng_from_seed(seed);
        let m = random_cmat(&mut rng, n, r) * random_cmat(&mut rng, r, k);
        let q = oracle::gram_schmidt(&m, 1e-10);
        prop_assert!(linalg::orthonormality_residual(&q) < 1e-12);
        let svd_span = Subspace::from_columns(&m, &cfg);
        prop_assert_eq!(q.ncols(), svd_span.dim());
        prop_assert!(oracle::containment_residual(&q, svd_span.basis()) < 1e-9);
        prop_assert!(oracle::containment_residual(svd_span.basis(), &q) < 1e-9);
    }

    #[test]
    fn numerical_range_of_symmetric_relations_is_real(seed in any::<u64>(), g in 1usize..5) {
        let theta = oracle::random_selfadjoint_relation(&mut rng_from_seed(seed), g, -1.0, 1.0);
        for z in oracle::numerical_range_hull(&theta, 64, seed) {
            prop_assert!(z.im.abs() < 1e-10);
            prop_assert!(z.re >= -1.0 - 1e-9 && z.re <= 1.0 + 1e-9);
        }
    }
}
