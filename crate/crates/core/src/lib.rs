//! Arithmetic of quadratic extensions of `F_q(T)` and the criteria deciding
//! whether a Drinfeld-Stuhler curve `X^D` violates the Hasse principle over
//! such an extension.
//!
//! The crate is layered bottom-up:
//!
//! - [`gfpoly`]: `F_q`, `A = F_q[T]`, factorization and extension fields.
//! - [`symbols`]: quadratic residue symbols, place decomposition in
//!   `K = F(sqrt(d))` and quaternion splitting.
//! - [`weil`]: Weil data of a prime `y` and the congruence sets used by the
//!   isogeny-character obstruction.
//! - [`jacobian`]: point counts, L-polynomials, Cantor arithmetic, divisor
//!   class groups and ray class groups of hyperelliptic function fields.
//! - [`localpoints`]: local solvability of `X^D` at every place of `K`.
//! - [`hasse`] and [`certificate`]: the end-to-end decision procedure and its
//!   JSON certificates.

pub mod arith;
pub mod certificate;
pub mod error;
pub mod gfpoly;
pub mod hasse;
pub mod jacobian;
pub mod localpoints;
pub mod rng;
pub mod symbols;
pub mod weil;

pub use error::{Error, Result};
