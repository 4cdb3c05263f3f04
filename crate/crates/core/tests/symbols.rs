//! Quadratic symbols against brute-force squares in `A / b`.

mod common;

#[test]
fn legendre_and_reciprocity_exhaustive() {
    assert!(common::reciprocity_suite() > 1000);
}

#[test]
fn jacobi_is_multiplicative_in_the_modulus() {
    assert!(common::jacobi_suite() > 1000);
}

#[test]
fn split_types_by_root_count() {
    assert!(common::split_type_suite() > 1000);
}
