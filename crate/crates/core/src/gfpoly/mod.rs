//! Arithmetic in `F_q`, `A = F_q[T]` and the finite extensions `F_{q^n}`.

pub mod enumerate;
pub mod ext;
pub mod factor;
pub mod fq;
pub mod parse;
pub mod poly;

pub use enumerate::{monic_of_degree, polys_up_to_degree, primes_up_to_degree, squarefree_monic_up_to, PrimesOfDegree};
pub use ext::{ExtElem, ExtField, QuadElem, QuadOver};
pub use factor::{
    factorize, is_irreducible, is_square_in_a, is_squarefree, prime_divisors, squarefree_kernel, Factorization,
    PrimePoly,
};
pub use fq::{FqElem, PrimeField};
pub use parse::parse_poly;
pub use poly::Poly;
