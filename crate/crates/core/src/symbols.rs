//! Quadratic residue symbols over `A`, decomposition of places in
//! `K = F(sqrt(d))`, and splitting of quaternion algebras by `K`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfpoly::fq::{self, PrimeField};
use crate::gfpoly::{is_squarefree, prime_divisors, squarefree_kernel, Poly, PrimePoly};

/// Behaviour of a place of `F` in a quadratic extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

impl SplitType {
    pub fn is_split(self) -> bool {
        self == SplitType::Split
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SplitType::Split => "split",
            SplitType::Inert => "inert",
            SplitType::Ramified => "ramified",
        }
    }
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A place of `F = F_q(T)`: a prime of `A` or the place `1/T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(PrimePoly),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => p.fmt(f),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

fn require_odd(q: u32) -> Result<()> {
    if q == 2 {
        return Err(Error::Unsupported("quadratic symbols need odd characteristic".into()));
    }
    Ok(())
}

/// `(a/p)`: `0` if `p | a`, else `+1` or `-1` as `a` is a square mod `p`.
/// Evaluated as the Euler power `(a mod p)^((|p|-1)/2)`.
pub fn legendre(a: &Poly, p: &PrimePoly) -> Result<i8> {
    require_odd(p.q())?;
    let r = a.rem(p)?;
    if r.is_zero() {
        return Ok(0);
    }
    let e = (p.norm() - 1u32) >> 1u32;
    let v = r.pow_mod(&e, p)?;
    if v.is_one() {
        Ok(1)
    } else if v.is_constant() && v.coeff(0) == p.q() - 1 {
        Ok(-1)
    } else {
        Err(Error::consistency(format!("{p} does not look prime")))
    }
}

/// Jacobi symbol `(a/b)` for monic nonconstant `b`, computed with the
/// Euclidean algorithm and reciprocity. Agrees with [`legendre`] for prime `b`
/// and costs only a gcd; used on hot paths.
pub fn jacobi(a: &Poly, b: &Poly) -> Result<i8> {
    let q = b.q();
    require_odd(q)?;
    if !b.is_monic() || b.deg() < 1 {
        return Err(Error::invalid("jacobi symbol needs a monic nonconstant modulus"));
    }
    let half = (q - 1) / 2;
    let mut a = a.rem(b)?;
    let mut b = b.clone();
    let mut sign: i8 = 1;
    loop {
        if a.is_zero() {
            return Ok(if b.deg() == 0 { sign } else { 0 });
        }
        let c = a.lc();
        if b.deg() % 2 == 1 {
            sign *= fq::quadratic_character(c, q);
        }
        let a_monic = a.monic();
        if a_monic.deg() == 0 {
            return Ok(sign);
        }
        if half % 2 == 1 && a_monic.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let r = b.rem(&a_monic)?;
        b = a_monic;
        a = r;
    }
}

/// Verifies `(f/g)(g/f) = (-1)^(((q-1)/2) deg f deg g)` for distinct primes.
pub fn reciprocity_check(f: &PrimePoly, g: &PrimePoly) -> Result<bool> {
    if f == g {
        return Err(Error::invalid("reciprocity needs two distinct primes"));
    }
    let lhs = legendre(f, g)? * legendre(g, f)?;
    let exponent = ((f.q() as u64 - 1) / 2) * f.degree() as u64 * g.degree() as u64;
    let rhs = if exponent.is_multiple_of(2) { 1 } else { -1 };
    Ok(lhs == rhs)
}

/// Behaviour of `inf` in `F(sqrt(m))` for a non-square `m`: ramified for odd
/// degree, split for even degree with square leading coefficient.
pub fn infinity_type_of(m: &Poly) -> SplitType {
    if m.deg() % 2 != 0 {
        SplitType::Ramified
    } else if fq::quadratic_character(m.lc(), m.q()) == 1 {
        SplitType::Split
    } else {
        SplitType::Inert
    }
}

/// Behaviour of `v` in `F(sqrt(m))` for any `m` that is not a square in `A`;
/// square factors of `m` are allowed and stripped when they matter.
pub fn split_type_of_radicand(m: &Poly, v: &Place) -> Result<SplitType> {
    match v {
        Place::Infinity => Ok(infinity_type_of(m)),
        Place::Finite(p) => {
            let s = jacobi(m, p)?;
            if s != 0 {
                return Ok(if s == 1 { SplitType::Split } else { SplitType::Inert });
            }
            let r = squarefree_kernel(m)?;
            Ok(match jacobi(&r, p)? {
                0 => SplitType::Ramified,
                1 => SplitType::Split,
                _ => SplitType::Inert,
            })
        }
    }
}

/// The quadratic extension `K = F(sqrt(d))` with `d` square-free nonconstant.
/// The leading coefficient of `d` is kept as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    d: Poly,
    infinity: SplitType,
}

impl QuadExt {
    pub fn new(d: Poly) -> Result<QuadExt> {
        require_odd(d.q())?;
        if d.deg() < 1 {
            return Err(Error::invalid("the discriminant must be nonconstant"));
        }
        if !is_squarefree(&d) {
            return Err(Error::invalid(format!("{d} is not square-free")));
        }
        let infinity = infinity_type_of(&d);
        Ok(QuadExt { d, infinity })
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    pub fn field(&self) -> PrimeField {
        self.d.field()
    }

    pub fn infinity_type(&self) -> SplitType {
        self.infinity
    }

    /// Genus of `K` (of the curve `y^2 = d(x)`).
    pub fn genus(&self) -> usize {
        let n = self.d.deg() as usize;
        if n % 2 == 1 {
            (n - 1) / 2
        } else {
            n / 2 - 1
        }
    }

    pub fn split_type_finite(&self, v: &PrimePoly) -> Result<SplitType> {
        Ok(match jacobi(&self.d, v)? {
            0 => SplitType::Ramified,
            1 => SplitType::Split,
            _ => SplitType::Inert,
        })
    }

    pub fn split_type(&self, v: &Place) -> Result<SplitType> {
        match v {
            Place::Infinity => Ok(self.infinity),
            Place::Finite(p) => self.split_type_finite(p),
        }
    }

    /// The finite primes ramified in `K`: the prime divisors of `d`.
    pub fn ramified_primes(&self) -> Result<Vec<PrimePoly>> {
        prime_divisors(&self.d)
    }
}

/// Free-standing form of [`QuadExt::split_type`].
pub fn place_split_type(v: &Place, k: &QuadExt) -> Result<SplitType> {
    k.split_type(v)
}

/// Quaternion algebra over `F` ramified exactly at two finite primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionD {
    p: PrimePoly,
    q: PrimePoly,
}

impl QuaternionD {
    pub fn new(p: PrimePoly, q: PrimePoly) -> Result<QuaternionD> {
        if p == q {
            return Err(Error::invalid("the two ramified primes must be distinct"));
        }
        if p.q() != q.q() {
            return Err(Error::invalid("ramified primes over different fields"));
        }
        require_odd(p.q())?;
        Ok(QuaternionD { p, q })
    }

    pub fn p(&self) -> &PrimePoly {
        &self.p
    }

    pub fn q(&self) -> &PrimePoly {
        &self.q
    }

    pub fn ram(&self) -> [&PrimePoly; 2] {
        [&self.p, &self.q]
    }

    pub fn is_ramified_at(&self, v: &PrimePoly) -> bool {
        *v == self.p || *v == self.q
    }

    /// The ramified prime other than `v`.
    pub fn other(&self, v: &PrimePoly) -> Option<&PrimePoly> {
        if *v == self.p {
            Some(&self.q)
        } else if *v == self.q {
            Some(&self.p)
        } else {
            None
        }
    }

    pub fn field(&self) -> PrimeField {
        self.p.field()
    }
}

/// `D ⊗ K ≅ M_2(K)`: local invariants `1/2` double exactly where the local
/// degree is two, so `K` splits `D` iff no ramified prime of `D` splits in `K`.
pub fn quaternion_split_by(dq: &QuaternionD, k: &QuadExt) -> Result<bool> {
    for v in dq.ram() {
        if k.split_type_finite(v)?.is_split() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same test for `F(sqrt(m))`, `m` any non-square.
pub fn quaternion_split_by_radicand(dq: &QuaternionD, m: &Poly) -> Result<bool> {
    for v in dq.ram() {
        if split_type_of_radicand(m, &Place::Finite(v.clone()))?.is_split() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::{parse_poly, PrimesOfDegree};

    fn f(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn poly(q: u32, s: &str) -> Poly {
        parse_poly(f(q), s).unwrap()
    }

    fn prime(q: u32, s: &str) -> PrimePoly {
        PrimePoly::new(poly(q, s)).unwrap()
    }

    #[test]
    fn symbols_of_plus_minus_t() {
        let p = prime(3, "T^2+T+2");
        assert_eq!(legendre(&poly(3, "T"), &p).unwrap(), -1);
        assert_eq!(legendre(&poly(3, "-T"), &p).unwrap(), -1);
        assert_eq!(legendre(&poly(3, "T"), &prime(3, "T^2+1")).unwrap(), 1);
        assert_eq!(legendre(&poly(3, "T^3+T"), &prime(3, "T^2+1")).unwrap(), 0);
    }

    #[test]
    fn jacobi_matches_legendre() {
        let field = f(5);
        let primes: Vec<PrimePoly> = (1..=3).flat_map(|n| PrimesOfDegree::new(field, n)).collect();
        for a in crate::gfpoly::polys_up_to_degree(field, 2) {
            for p in &primes {
                assert_eq!(jacobi(&a, p).unwrap(), legendre(&a, p).unwrap(), "{a} {p}");
            }
        }
    }

    #[test]
    fn example_places() {
        let k = QuadExt::new(poly(3, "T^13+2*T+1")).unwrap();
        assert_eq!(k.infinity_type(), SplitType::Ramified);
        assert_eq!(k.genus(), 6);
        let v = prime(3, "T^6+2*T^4+T^2+2*T+2");
        assert_eq!(k.split_type_finite(&v).unwrap(), SplitType::Inert);
        let k2 = QuadExt::new(poly(3, "2*T^2+1")).unwrap();
        assert_eq!(k2.infinity_type(), SplitType::Inert);
        let k3 = QuadExt::new(poly(3, "T^2+2")).unwrap();
        assert_eq!(k3.infinity_type(), SplitType::Split);
        assert!(QuadExt::new(poly(3, "T^2")).is_err());
        assert!(QuadExt::new(poly(3, "2")).is_err());
    }

    #[test]
    fn reciprocity_samples() {
        assert!(reciprocity_check(&prime(5, "T"), &prime(5, "T^3+2*T+4")).unwrap());
        assert!(reciprocity_check(&prime(3, "T"), &prime(3, "T+1")).unwrap());
        assert!(reciprocity_check(&prime(3, "T"), &prime(3, "T")).is_err());
    }

    #[test]
    fn radicand_with_square_part() {
        // m = T^2 (T+1): T divides m but F(sqrt(m)) = F(sqrt(T+1)), where T splits
        let m = poly(3, "T^2*(T+1)");
        let t = Place::Finite(prime(3, "T"));
        assert_eq!(split_type_of_radicand(&m, &t).unwrap(), SplitType::Split);
        let m2 = poly(3, "T^3");
        assert_eq!(split_type_of_radicand(&m2, &t).unwrap(), SplitType::Ramified);
    }
}
