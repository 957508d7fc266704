use degen::metric::Classification;
use degen::topology::{
    cy_component_criterion, euler, friedman_smoothability_flag, pg_equality_check, reconstruct_betti_x,
    surgery_report, ComponentGenera, SurgeryDatum, TopologyError,
};
use proptest::prelude::*;

#[test]
fn single_node_conifold() {
    let d = SurgeryDatum::new(&[1, 0, 1, 202, 1, 0, 1], 1, 1).unwrap();
    let r = surgery_report(&d).unwrap();
    assert_eq!(r.betti_smooth, [1, 0, 1, 204, 1, 0, 1]);
    assert_eq!(r.betti_nodal, [1, 0, 1, 203, 1, 0, 1]);
    assert_eq!((r.euler_x, r.euler_smooth, r.euler_nodal), (-198, -200, -199));
    assert!(r.monodromy_nontrivial);
    assert!(friedman_smoothability_flag(&d));
}

#[test]
fn relations_without_curves_lost() {
    // three nodes, one relation: two classes disappear, two 3-cycles appear
    let d = SurgeryDatum::new(&[1, 0, 5, 10, 5, 0, 1], 3, 1).unwrap();
    let r = surgery_report(&d).unwrap();
    assert_eq!(r.betti_smooth, [1, 0, 3, 12, 3, 0, 1]);
    assert_eq!(r.vanishing_cycle_dim, 1);
    let flat = SurgeryDatum::new(&[1, 0, 5, 10, 5, 0, 1], 3, 0).unwrap();
    assert!(!friedman_smoothability_flag(&flat));
    assert!(!surgery_report(&flat).unwrap().monodromy_nontrivial);
}

#[test]
fn malformed_surgery_data() {
    assert_eq!(SurgeryDatum::new(&[1, 0, 1], 1, 1).unwrap_err(), TopologyError::BettiLength(3));
    assert!(matches!(SurgeryDatum::new(&[1, 1, 1, 2, 1, 0, 1], 1, 1), Err(TopologyError::BettiShape { index: 1, .. })));
    assert!(matches!(SurgeryDatum::new(&[1, 0, 1, 2, 2, 0, 1], 1, 1), Err(TopologyError::BettiShape { index: 4, .. })));
    assert_eq!(SurgeryDatum::new(&[1, 0, 1, 2, 1, 0, 1], 0, 0).unwrap_err(), TopologyError::NoNodes);
    assert_eq!(
        SurgeryDatum::new(&[1, 0, 1, 2, 1, 0, 1], 1, 2).unwrap_err(),
        TopologyError::RankOutOfRange { rho: 2, k: 1 }
    );
    assert_eq!(
        SurgeryDatum::new(&[1, 0, 1, 2, 1, 0, 1], 3, 0).unwrap_err(),
        TopologyError::TooFewClasses { b2: 1, needed: 3 }
    );
}

#[test]
fn geometric_genus_bookkeeping() {
    let c = |g, v: &[u64]| pg_equality_check(&ComponentGenera::new(g, v.to_vec()).unwrap());
    assert_eq!(c(1, &[1, 0, 0]), Classification::FiniteDistance);
    assert_eq!(c(1, &[0, 0]), Classification::InfiniteDistance);
    assert_eq!(c(4, &[2, 1]), Classification::InfiniteDistance);
    assert!(matches!(ComponentGenera::new(2, vec![2, 1]), Err(TopologyError::ExceedsGeneric { .. })));
    assert!(cy_component_criterion(&[1, 0, 0]).pass);
    assert!(!cy_component_criterion(&[0, 0]).pass);
    let two = cy_component_criterion(&[1, 1]);
    assert!(!two.pass && two.contradicts_bound);
    assert!(!cy_component_criterion(&[2]).pass);
}

fn datum() -> impl Strategy<Value = SurgeryDatum> {
    (0i64..30, 0i64..400, 1i64..12)
        .prop_flat_map(|(b2, b3, k)| (Just(b2), Just(b3), Just(k), 0..=k))
        .prop_filter_map("needs enough classes", |(b2, b3, k, rho)| SurgeryDatum::new(&[1, 0, b2, b3, b2, 0, 1], k, rho).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn surgery_invariants(d in datum()) {
        let r = surgery_report(&d).unwrap();
        let (k, rho) = (d.nodes, d.relation_rank);
        prop_assert_eq!(euler(&r.betti_smooth), euler(&d.betti_x) - 2 * k);
        prop_assert_eq!(euler(&r.betti_nodal), euler(&d.betti_x) - k);
        prop_assert_eq!(r.betti_smooth[2] + r.betti_smooth[3] / 2, d.betti_x[2] + d.betti_x[3] / 2 - k + 2 * rho);
        prop_assert_eq!(reconstruct_betti_x(&r.betti_smooth, k, rho), d.betti_x);
        prop_assert!(r.betti_nodal[3] >= r.betti_smooth[3] - k && r.betti_nodal[3] <= r.betti_smooth[3]);
        // Poincare duality on the smoothing
        prop_assert_eq!(r.betti_smooth[2], r.betti_smooth[4]);
        prop_assert!(r.betti_smooth[3] % 2 == d.betti_x[3] % 2);
        prop_assert_eq!(friedman_smoothability_flag(&d), rho > 0);
    }

    #[test]
    fn pg_classification(g in 0u64..10, parts in prop::collection::vec(0u64..4, 1..5)) {
        let sum: u64 = parts.iter().sum();
        match ComponentGenera::new(g, parts.clone()) {
            Ok(c) => {
                let finite = pg_equality_check(&c) == Classification::FiniteDistance;
                prop_assert_eq!(finite, sum == g);
            }
            Err(_) => prop_assert!(sum > g),
        }
    }
}
