use proptest::prelude::*;
use qsd_core::matcore::{frobenius, haar_random_unitary, kron, phase_aligned_distance, CMatrix};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product(sa in 0u64..1000, sb in 0u64..1000, sc in 0u64..1000, sd in 0u64..1000) {
        let [a, b, c, d] = [sa, sb, sc, sd].map(|s| haar_random_unitary(1, s).unwrap().into_inner());
        let lhs = kron(&a, &b) * kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(frobenius(&(lhs - rhs)) < 1e-13);
    }

    #[test]
    fn phase_distance_ignores_global_phase(seed in 0u64..1000, phi in -10.0f64..10.0, n in 1usize..4) {
        let u = haar_random_unitary(n, seed).unwrap();
        let d = phase_aligned_distance(&u, &u.with_phase(phi)).unwrap();
        prop_assert!(d < 1e-12);
    }

    #[test]
    fn phase_distance_is_symmetric(s1 in 0u64..1000, s2 in 0u64..1000) {
        let a = haar_random_unitary(2, s1).unwrap();
        let b = haar_random_unitary(2, s2).unwrap();
        let ab = phase_aligned_distance(&a, &b).unwrap();
        let ba = phase_aligned_distance(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ab <= 2.0 * 2.0 + 1e-12);
    }

    #[test]
    fn haar_samples_are_unitary(seed in any::<u64>(), n in 1usize..5) {
        let u = haar_random_unitary(n, seed).unwrap();
        let dim = 1 << n;
        let e = u.matrix().adjoint() * u.matrix() - CMatrix::identity(dim, dim);
        prop_assert!(frobenius(&e) < 1e-12);
        prop_assert_eq!(u, haar_random_unitary(n, seed).unwrap());
    }
}
