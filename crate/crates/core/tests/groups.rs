//! `can_surject` against an exhaustive search for surjective homomorphisms.

mod common;

use common::surjects_by_search;
use hasse_core::jacobian::{can_surject, presentation, AbGroupStruct};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_group(max_each: u64, max_len: usize, max_order: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=max_each, 1..=max_len)
        .prop_filter("bounded order", move |v| v.iter().product::<u64>() <= max_order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn surjection_criterion(g in small_group(16, 3, 200), h in small_group(12, 2, 60)) {
        let expect = surjects_by_search(&g, &h);
        let got = can_surject(&AbGroupStruct::finite(g.clone()), &AbGroupStruct::finite(h.clone()));
        prop_assert_eq!(got, expect, "G = {:?}, H = {:?}", g, h);
    }

    /// A diagonal presentation gives the same group as the direct normal form.
    #[test]
    fn presentation_of_diagonal(orders in small_group(16, 3, 200)) {
        let rows: Vec<Vec<BigInt>> = (0..orders.len())
            .map(|i| (0..orders.len()).map(|j| BigInt::from(if i == j { orders[i] } else { 0 })).collect())
            .collect();
        let g = presentation(orders.len(), &rows).unwrap();
        prop_assert_eq!(g.free_rank, 0);
        prop_assert_eq!(g.torsion_order(), orders.iter().product::<u64>() as u128);
        prop_assert_eq!(g, AbGroupStruct::finite(orders));
    }
}

#[test]
fn seeded_surjection_sweep() {
    assert!(common::surjection_suite() >= 1000);
}

#[test]
fn search_oracle_sanity() {
    assert!(!surjects_by_search(&[2, 2], &[4]));
    assert!(surjects_by_search(&[4], &[2]));
    assert!(surjects_by_search(&[12], &[4, 3]));
    assert!(!surjects_by_search(&[6, 10], &[2, 2, 2]));
    assert!(surjects_by_search(&[4, 4], &[2, 4]));
}

#[test]
fn surjection_with_free_parts() {
    let z = AbGroupStruct::from_orders(1, &[]);
    for n in 1..=40u64 {
        assert!(can_surject(&z, &AbGroupStruct::finite(vec![n])));
        assert!(can_surject(&z.product(&AbGroupStruct::finite(vec![n])), &z));
        assert!(!can_surject(&AbGroupStruct::finite(vec![n]), &z));
    }
}
