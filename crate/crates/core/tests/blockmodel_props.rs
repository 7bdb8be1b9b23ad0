use blockcs::blockmodel::{block_sparsity, mixed_norm_21, objective_value};
use blockcs::BlockSignal;
use proptest::prelude::*;

fn signal() -> impl Strategy<Value = BlockSignal> {
    (1usize..5, 1usize..6).prop_flat_map(|(d, n)| {
        prop::collection::vec(prop_oneof![3 => -10.0f64..10.0, 1 => Just(0.0)], d * n)
            .prop_map(move |v| BlockSignal::from_slice(&v, d).unwrap())
    })
}

proptest! {
    #[test]
    fn l22_is_l2(x in signal()) {
        prop_assert!((x.mixed_norm_22() - x.norm_l2()).abs() <= 1e-12 * x.norm_l2().max(1.0));
    }

    #[test]
    fn l21_is_sandwiched(x in signal()) {
        let n = x.partition().num_blocks() as f64;
        let (l2, l21) = (x.norm_l2(), x.mixed_norm_21());
        prop_assert!(l2 <= l21 * (1.0 + 1e-12) + 1e-300);
        prop_assert!(l21 <= n.sqrt() * l2 * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn objective_sign(x in signal(), alpha in 0.0f64..=1.0) {
        let f = objective_value(&x, alpha);
        prop_assert!(f >= -1e-12 * x.norm_l2().max(1.0));
        if block_sparsity(&x, 0.0) <= 1 && alpha == 1.0 {
            prop_assert!(f.abs() <= 1e-12 * x.norm_l2().max(1.0));
        }
        if block_sparsity(&x, 0.0) >= 2 {
            prop_assert!(f > 0.0);
        }
    }

    #[test]
    fn l21_extreme_partitions(v in prop::collection::vec(-5.0f64..5.0, 1..12)) {
        let l1: f64 = v.iter().map(|x| x.abs()).sum();
        let l2 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scalar = BlockSignal::from_slice(&v, 1).unwrap();
        let whole = BlockSignal::from_slice(&v, v.len()).unwrap();
        prop_assert!((mixed_norm_21(&scalar) - l1).abs() <= 1e-12 * l1.max(1.0));
        prop_assert!((mixed_norm_21(&whole) - l2).abs() <= 1e-12 * l2.max(1.0));
    }

    #[test]
    fn sparsity_monotone_in_tol(x in signal(), a in 0.0f64..20.0, b in 0.0f64..20.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(block_sparsity(&x, hi) <= block_sparsity(&x, lo));
    }
}
