//! Property tests over randomly generated discretizations.

use proptest::prelude::*;
use yamabe_core::discrete::{product, scale_metric, DiscreteManifold, Edge};
use yamabe_core::functional::{
    check_iterated_holder, check_partial_gradient, check_young, yamabe_quotient,
};

fn arb_manifold(dim: std::ops::Range<u32>) -> impl Strategy<Value = DiscreteManifold> {
    (dim, 2usize..6).prop_flat_map(|(d, n)| {
        let masses = proptest::collection::vec(0.3f64..3.0, n);
        let weights = proptest::collection::vec(0.1f64..2.0, n - 1);
        let curv = proptest::collection::vec(-3.0f64..3.0, n);
        (Just(d), masses, weights, curv).prop_map(|(d, masses, weights, curv)| {
            let edges = weights
                .into_iter()
                .enumerate()
                .map(|(i, w)| Edge::new(i, i + 1, w))
                .collect();
            DiscreteManifold::new(d, masses, edges, curv, "prop").unwrap()
        })
    })
}

fn arb_field(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-2.0f64..2.0, n)
        .prop_filter("field must not vanish", |u| u.iter().any(|&x| x != 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_volume_is_multiplicative(
        a in arb_manifold(1..6),
        b in arb_manifold(1..6),
    ) {
        let p = product(&a, &b).unwrap();
        let expected = a.total_volume() * b.total_volume();
        prop_assert!((p.total_volume() - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn quotient_is_homogeneous_and_metric_scale_invariant(
        (m, u, c, lambda) in arb_manifold(3..7).prop_flat_map(|m| {
            let n = m.n_vertices();
            (Just(m), arb_field(n), prop_oneof![-4.0f64..-0.01, 0.01f64..4.0], 0.05f64..20.0)
        }),
    ) {
        let f = yamabe_quotient(&m, &u).unwrap();
        let scaled_field: Vec<f64> = u.iter().map(|&x| c * x).collect();
        let f_scaled = yamabe_quotient(&m, &scaled_field).unwrap();
        prop_assert!((f_scaled - f).abs() <= 1e-11 * f.abs().max(1.0));

        let scaled_metric = scale_metric(&m, lambda).unwrap();
        let f_metric = yamabe_quotient(&scaled_metric, &u).unwrap();
        prop_assert!((f_metric - f).abs() <= 1e-10 * f.abs().max(1.0));
    }

    #[test]
    fn product_inequalities_always_hold(
        (a, b, u) in (arb_manifold(3..7), arb_manifold(3..7)).prop_flat_map(|(a, b)| {
            let n = a.n_vertices() * b.n_vertices();
            (Just(a), Just(b), arb_field(n))
        }),
    ) {
        prop_assert!(check_iterated_holder(&a, &b, &u).unwrap().holds);
        prop_assert!(check_partial_gradient(&a, &b, &u).unwrap().holds);
    }

    #[test]
    fn young_inequality_always_holds(
        c in 0.0f64..50.0,
        d in 0.0f64..50.0,
        v in 3u32..12,
        w in 3u32..12,
    ) {
        prop_assert!(check_young(c, d, v, w).unwrap().holds);
    }
}
