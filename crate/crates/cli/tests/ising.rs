use modkit::ising::{brute_force, ising_partition, transfer_trace};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transfer_trace_matches_brute_force(
        (m, n) in (1usize..=12).prop_flat_map(|m| (Just(m), 1usize..=(20 / m).max(1))),
        beta in 0.0f64..1.5,
        j in -1.0f64..1.0,
    ) {
        let r = ising_partition(m, n, beta, j).unwrap();
        prop_assert!(r.relative_difference() < 1e-12, "{m}x{n}: {:?}", r);
    }

    #[test]
    fn infinite_temperature_counts_configurations(m in 1usize..=5, n in 1usize..=4) {
        let expect = 2f64.powi((m * n) as i32);
        prop_assert_eq!(brute_force(m, n, 0.0, 1.0).unwrap(), expect);
        prop_assert!((transfer_trace(m, n, 0.0, 1.0).unwrap() - expect).abs() < 1e-9 * expect);
    }
}
