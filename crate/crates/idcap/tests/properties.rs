//! Property tests for the scalar machinery.

use idcap::channels::{bsc_apply, ProbDist};
use idcap::covering_geometry::{chernoff_tail, dumer_bound, EllipsoidSpec};
use idcap::info_measures::{binary_entropy, binary_rel_entropy};
use idcap::soft_covering::{covering_rhs, sufficient_m};
use proptest::prelude::*;

fn arb_dist(len: usize) -> impl Strategy<Value = ProbDist> {
    proptest::collection::vec(0.01f64..1.0, len).prop_map(|raw| {
        let sum: f64 = raw.iter().sum();
        ProbDist::new(raw.into_iter().map(|x| x / sum).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn entropy_symmetric_and_bounded(q in 0.0f64..=1.0) {
        let h = binary_entropy(q).unwrap();
        let h_flip = binary_entropy(1.0 - q).unwrap();
        prop_assert!((h - h_flip).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-15).contains(&h));
    }

    #[test]
    fn rel_entropy_nonnegative(x in 0.0f64..=1.0, y in 0.001f64..0.999) {
        prop_assert!(binary_rel_entropy(x, y).unwrap() >= 0.0);
    }

    #[test]
    fn bsc_composes(q1 in 0.0f64..=1.0, q2 in 0.0f64..=1.0, input in arb_dist(8)) {
        let two_step = bsc_apply(&bsc_apply(&input, q1).unwrap(), q2).unwrap();
        let merged = bsc_apply(&input, q1 * (1.0 - q2) + q2 * (1.0 - q1)).unwrap();
        prop_assert!(two_step.tv_distance(&merged).unwrap() <= 1e-12);
    }

    #[test]
    fn bsc_contracts_tv(q in 0.0f64..=1.0, u in arb_dist(16), v in arb_dist(16)) {
        let before = u.tv_distance(&v).unwrap();
        let after = bsc_apply(&u, q).unwrap().tv_distance(&bsc_apply(&v, q).unwrap()).unwrap();
        prop_assert!(after <= before + 1e-14);
    }

    #[test]
    fn sufficient_m_meets_target(
        // ranges chosen so the codebook size fits in u64
        alpha in 1.2f64..1.95,
        eps in 0.05f64..0.9,
        sup_i in 0.0f64..8.0,
    ) {
        let m = sufficient_m(alpha, eps, sup_i).unwrap();
        prop_assert!(covering_rhs(alpha, sup_i, m).unwrap() <= eps + 1e-12);
        if m > 1 {
            // one codeword less misses the target (ceiling minimality)
            prop_assert!(covering_rhs(alpha, sup_i, m - 1).unwrap() > eps - 1e-9);
        }
    }

    #[test]
    fn chernoff_bound_is_a_probability_bound(
        n in 1u32..80,
        q in 0.05f64..0.95,
        a in 0.0f64..1.0,
    ) {
        let v = chernoff_tail(n, q, a, 0.0).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn dumer_partition_counts_all_axes(
        axes in proptest::collection::vec(0.05f64..4.0, 1..12),
        theta in 0.01f64..0.49,
    ) {
        let spec = EllipsoidSpec::from_axes(&axes).unwrap();
        // bound is finite and nonnegative, and grows with uniform scaling up
        let b1 = dumer_bound(&spec, theta).unwrap();
        let b2 = dumer_bound(&spec.scale(2.0).unwrap(), theta).unwrap();
        prop_assert!(b1 >= 0.0 && b1.is_finite());
        prop_assert!(b2 >= b1 - 1e-12);
    }
}
