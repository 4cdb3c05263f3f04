//! Irreducibility testing and factorization in `F_q[T]`.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::fq::{self, PrimeField};
use super::poly::Poly;
use crate::arith::prime_factors_u64;
use crate::error::{Error, Result};
use crate::rng;

/// Monic irreducible polynomial, i.e. a prime of `A`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePoly(Poly);

impl PrimePoly {
    pub fn new(f: Poly) -> Result<PrimePoly> {
        if !f.is_monic() {
            return Err(Error::invalid(format!("{f} is not monic")));
        }
        if !is_irreducible(&f)? {
            return Err(Error::invalid(format!("{f} is not irreducible")));
        }
        Ok(PrimePoly(f))
    }

    /// Caller guarantees `f` is monic irreducible.
    pub(crate) fn new_unchecked(f: Poly) -> PrimePoly {
        debug_assert!(f.is_monic() && f.deg() >= 1);
        PrimePoly(f)
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.deg() as usize
    }

    /// `|p| = q^deg p`, the size of the residue field.
    pub fn norm(&self) -> BigUint {
        BigUint::from(self.0.q()).pow(self.degree() as u32)
    }
}

impl Deref for PrimePoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimePoly({})", self.0)
    }
}

/// `f = unit * prod p_i^{e_i}`, primes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(PrimePoly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self, field: PrimeField) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit as i64), |acc, (p, e)| {
                acc.mul(&p.pow(*e as u64))
            })
    }

    pub fn primes(&self) -> impl Iterator<Item = &PrimePoly> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// `T^(q^k) mod f` for `k = 1..=n`, by repeated `q`-th powering.
fn frobenius_chain(f: &Poly, n: usize) -> Vec<Poly> {
    let q = BigUint::from(f.q());
    let mut out = Vec::with_capacity(n);
    let mut h = Poly::t(f.field()).rem(f).expect("nonzero modulus");
    for _ in 0..n {
        h = h.pow_mod(&q, f).expect("nonzero modulus");
        out.push(h.clone());
    }
    out
}

/// Rabin's test: `f | T^(q^n) - T` and `gcd(T^(q^(n/r)) - T, f) = 1` for
/// each prime `r | n`, where `n = deg f`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::invalid("irreducibility of the zero polynomial")),
        Some(0) => return Err(Error::invalid("irreducibility of a constant")),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic();
    if f.coeff(0) == 0 {
        return Ok(false);
    }
    let chain = frobenius_chain(&f, n);
    let t = Poly::t(f.field());
    if chain[n - 1] != t {
        return Ok(false);
    }
    for r in prime_factors_u64(n as u64) {
        let k = n / r as usize;
        if !chain[k - 1].sub(&t).gcd(&f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Square-free decomposition of a monic polynomial: pairs `(a_i, i)` with
/// `f = prod a_i^i`, each `a_i` square-free, pairwise coprime, nonconstant.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn sqf_rec(f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    if f.deg() < 1 {
        return;
    }
    let p = f.q();
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            push_merge(out, z, i * mult);
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
    }
    if !c.is_constant() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        sqf_rec(&root, mult * p, out);
    }
}

fn push_merge(out: &mut Vec<(Poly, u32)>, g: Poly, e: u32) {
    if let Some(slot) = out.iter_mut().find(|(_, m)| *m == e) {
        slot.0 = slot.0.mul(&g);
    } else {
        out.push((g, e));
    }
}

pub fn is_squarefree(f: &Poly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.is_constant() {
        return true;
    }
    f.gcd(&f.derivative()).is_one()
}

/// Square class representative: `lc(f) * prod_{i odd} a_i` from the
/// square-free decomposition, so that `f = r * s^2` with `r` square-free.
/// Needs no factorization into primes.
pub fn squarefree_kernel(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::invalid("square class of zero"));
    }
    let lc = Poly::constant(f.field(), f.lc() as i64);
    Ok(squarefree_decomposition(f)
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(lc, |acc, (a, _)| acc.mul(&a)))
}

/// Whether `f` is a square in `A` (zero counts as a square).
pub fn is_square_in_a(f: &Poly) -> bool {
    if f.is_zero() {
        return true;
    }
    if fq::quadratic_character(f.lc(), f.q()) != 1 {
        return false;
    }
    squarefree_decomposition(f).iter().all(|(_, e)| e % 2 == 0)
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// `(g_d, d)` where `g_d` is the product of all degree-`d` prime factors.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let t = Poly::t(field);
    let q = BigUint::from(f.q());
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = t.rem(&rest).expect("nonzero");
    let mut d = 0;
    while rest.deg() >= 2 * (d as i64 + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest).expect("nonzero");
        let g = h.sub(&t).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg() as usize;
        out.push((rest, n));
    }
    out
}

/// Splits a monic square-free product of primes of common degree `d`.
pub fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let mut out = Vec::new();
    edf_rec(g, d, rng, &mut out);
    out.sort();
    out
}

fn edf_rec(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.deg() as usize;
    if n == d {
        out.push(g.clone());
        return;
    }
    let field = g.field();
    let q = g.q();
    let exp = (BigUint::from(q).pow(d as u32) - 1u32) >> 1;
    loop {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..q) as i64).collect();
        let a = Poly::from_coeffs(field, &coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if q == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = cur.mul_mod(&cur, g).expect("nonzero");
                acc = acc.add(&cur);
            }
            acc
        } else {
            a.pow_mod(&exp, g).expect("nonzero").sub(&Poly::one(field))
        };
        let h = b.gcd(g);
        if h.deg() > 0 && h.deg() < g.deg() {
            let other = g.exact_div(&h).expect("gcd divides");
            edf_rec(&h, d, rng, out);
            edf_rec(&other, d, rng, out);
            return;
        }
    }
}

/// Complete factorization with the process-wide seed.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    let mut rng = rng::stream(0x4643);
    factorize_with_rng(f, &mut rng)
}

pub fn factorize_with_rng(f: &Poly, rng: &mut ChaCha8Rng) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::invalid("factorization of the zero polynomial"));
    }
    let unit = f.lc();
    let mut factors: Vec<(PrimePoly, u32)> = Vec::new();
    for (a, e) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree(&a) {
            for p in equal_degree(&g, d, rng) {
                factors.push((PrimePoly::new_unchecked(p), e));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Distinct monic prime divisors of a nonzero polynomial.
pub fn prime_divisors(f: &Poly) -> Result<Vec<PrimePoly>> {
    Ok(factorize(f)?.factors.into_iter().map(|(p, _)| p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::parse_poly;

    fn p3(s: &str) -> Poly {
        parse_poly(PrimeField::new(3).unwrap(), s).unwrap()
    }

    #[test]
    fn known_irreducibles() {
        assert!(is_irreducible(&p3("T^13+2*T+1")).unwrap());
        assert!(is_irreducible(&p3("T^2+1")).unwrap());
        assert!(is_irreducible(&p3("T^6+2*T^4+T^2+2*T+2")).unwrap());
        assert!(!is_irreducible(&p3("T^2+2")).unwrap());
        assert!(!is_irreducible(&p3("(T^2+1)*(T^3+2*T+1)")).unwrap());
        assert!(is_irreducible(&p3("2")).is_err());
    }

    #[test]
    fn factor_small() {
        let fac = factorize(&p3("T^2+2")).unwrap();
        let names: Vec<String> = fac.primes().map(|p| p.to_string()).collect();
        assert_eq!(names, ["T+1", "T+2"]);
        assert_eq!(fac.unit, 1);
    }

    #[test]
    fn factor_with_p_th_powers() {
        // (T+1)^3 (T^2+1)^4 * 2 has derivative-killing parts
        let f = p3("2*(T+1)^3*(T^2+1)^4*T");
        let fac = factorize(&f).unwrap();
        assert_eq!(fac.reconstruct(f.field()), f);
        let shape: Vec<(String, u32)> = fac.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        assert_eq!(shape, [("T".to_string(), 1), ("T+1".into(), 3), ("T^2+1".into(), 4)]);
    }

    #[test]
    fn kernel_removes_squares() {
        let f = p3("2*T^3*(T+1)^2*(T^2+1)");
        assert_eq!(squarefree_kernel(&f).unwrap(), p3("2*T*(T^2+1)"));
        assert!(is_square_in_a(&p3("(T^2+T+2)^2")));
        assert!(!is_square_in_a(&p3("2*(T^2+T+2)^2")));
    }
}
