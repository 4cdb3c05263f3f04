//! Invariants of `K = F(sqrt(d))` for odd-degree `d`: point counts, the
//! L-polynomial, `Pic^0`, the ray class group of modulus `P * inf`, and the
//! class-group obstruction to global points.

mod curve;
mod group;
mod miller;
mod mumford;
mod pic;
mod ray;

pub use curve::{HyperCurve, LPolynomial};
pub use group::{can_surject, presentation, smith_diagonal, AbGroupStruct};
pub use miller::{miller_evaluate, FnVal, InertPlace};
pub use mumford::{Divisor, DivisorText, Factor};
pub use pic::{Formal, Generator, Pic0};
pub use ray::{
    check_global_obstruction, dlog, ray_class_from_pic, ray_class_structure, ClassOutcome, GlobalClassCheck,
    RayClassData,
};
