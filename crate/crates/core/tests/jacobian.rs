//! Cantor arithmetic, class numbers, `Pic^0` and Miller evaluation against
//! brute force on small random curves `y^2 = d(x)`, `d` square-free of odd degree.

mod common;

#[test]
fn l_polynomial_and_lagrange() {
    assert!(common::l_polynomial_suite() >= 1000);
}

#[test]
fn group_laws_on_random_triples() {
    assert!(common::group_law_suite() >= 1000);
}

#[test]
fn pic0_structure_matches_brute_force() {
    assert!(common::pic0_suite() > 50);
}

#[test]
fn miller_values_are_multiplicative() {
    assert!(common::miller_suite() >= 1000);
}
