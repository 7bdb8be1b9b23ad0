#[path = "support/oracle.rs"]
mod oracle;

use blockcs::bounds::{theorem1_coefficient, theorem2_coefficient, BoundInput};

fn input(s: usize, d: usize, alpha: f64, mu_block: f64) -> BoundInput {
    BoundInput {
        s,
        d,
        alpha,
        mu_block,
        eps: 0.1,
        eta: 0.2,
    }
}

// (s, d, alpha, mu, coefficient) frozen from the reference formulas.
const L2_NOISE: [(usize, usize, f64, f64, f64); 3] = [
    (1, 1, 1.0, 0.1, 3.3428571428571434),
    (2, 1, 0.5, 0.05, 3.655958934832713),
    (3, 1, 0.8, 0.05, 8.502843267970757),
];

const DANTZIG: [(usize, usize, f64, f64, f64); 4] = [
    (1, 1, 1.0, 0.1, 7.006486812149801),
    (2, 2, 0.8, 0.02, 12.580117193190656),
    (3, 4, 0.8, 0.0, 38.696938456699066),
    (4, 1, 0.3, 0.05, 12.86308209434232),
];

#[test]
fn reference_reproduces_frozen_values() {
    for (s, d, a, mu, c) in L2_NOISE {
        assert!((oracle::l2_noise_reference(s, d, a, mu) - c).abs() <= 1e-12);
    }
    for (s, d, a, mu, c) in DANTZIG {
        assert!((oracle::dantzig_reference(s, d, a, mu) - c).abs() <= 1e-12);
    }
    assert!((L2_NOISE[0].4 - 2.0 * 0.9 * 1.3 / 0.7).abs() <= 1e-12);
    assert!((DANTZIG[2].4 - 2.0 * (12.0 + 3.0 * 6f64.sqrt())).abs() <= 1e-12);
}

#[test]
fn coefficients_match_frozen_values() {
    for (s, d, a, mu, c) in L2_NOISE {
        let r = theorem1_coefficient(&input(s, d, a, mu)).unwrap();
        assert!((r.coefficient - c).abs() <= 1e-12, "s {s}: {} vs {c}", r.coefficient);
        assert!((r.bound - c * 0.30000000000000004).abs() <= 1e-12);
    }
    for (s, d, a, mu, c) in DANTZIG {
        let r = theorem2_coefficient(&input(s, d, a, mu)).unwrap();
        assert!((r.coefficient - c).abs() <= 1e-12, "s {s}: {} vs {c}", r.coefficient);
    }
}

#[test]
fn coefficients_agree_with_reference_on_a_grid() {
    for s in 1..=6 {
        for d in [1, 2, 4] {
            for a in [0.1, 0.5, 0.8, 1.0] {
                let limit = 1.0 / (3.0 * s as f64 * d as f64);
                for k in 0..20 {
                    let mu = limit * k as f64 / 20.0;
                    let t1 = theorem1_coefficient(&input(s, d, a, mu)).unwrap().coefficient;
                    let t2 = theorem2_coefficient(&input(s, d, a, mu)).unwrap().coefficient;
                    let r1 = oracle::l2_noise_reference(s, d, a, mu);
                    let r2 = oracle::dantzig_reference(s, d, a, mu);
                    assert!((t1 - r1).abs() <= 1e-12 * r1, "{s} {d} {a} {mu}");
                    assert!((t2 - r2).abs() <= 1e-12 * r2, "{s} {d} {a} {mu}");
                }
            }
        }
    }
}

proptest::proptest! {
    #[test]
    fn l2_coefficient_grows_with_s_beyond_two(d in 1usize..5, a in 0.05f64..1.0, frac in 0.01f64..0.99) {
        let mu = frac / (3.0 * 12.0 * d as f64);
        let mut prev = theorem1_coefficient(&input(3, d, a, mu)).unwrap().coefficient;
        for s in 4..=12 {
            let c = theorem1_coefficient(&input(s, d, a, mu)).unwrap().coefficient;
            proptest::prop_assert!(c > prev, "s {} d {} a {} mu {}: {} <= {}", s, d, a, mu, c, prev);
            prev = c;
        }
    }
}
