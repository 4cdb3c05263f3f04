//! Weil data and power sums against independent constructions.

mod common;

#[test]
fn weil_data_match_newton_polygon() {
    assert!(common::weil_suite() > 1000);
}

#[test]
fn power_sums_are_companion_traces() {
    assert!(common::power_sum_suite() > 1000);
}

#[test]
fn prime_set_membership_by_evaluation_at_a_root() {
    assert!(common::prime_set_suite() > 100);
}
