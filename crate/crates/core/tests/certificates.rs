//! Certificates are deterministic, seed-independent, survive a JSON round
//! trip, and verify; tampering with a recorded part is caught.

mod common;

#[test]
fn certificates_are_deterministic_and_verify() {
    assert!(common::certificate_suite() >= 1000);
}
