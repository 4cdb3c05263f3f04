//! Dense univariate polynomials over `F_q`: the ring `A = F_q[T]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::fq::{self, FqElem, PrimeField};
use crate::error::{Error, Result};

/// Element of `A = F_q[T]`. Coefficient `i` multiplies `T^i`; the vector is
/// kept trimmed so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u32,
    c: Vec<u32>,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Poly {
        Poly {
            q: field.q(),
            c: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: PrimeField, v: i64) -> Poly {
        Poly::from_raw(field.q(), vec![fq::reduce_i64(v, field.q())])
    }

    pub fn from_elem(e: FqElem) -> Poly {
        Poly::from_raw(e.field().q(), vec![e.value()])
    }

    /// The indeterminate `T`.
    pub fn t(field: PrimeField) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn monomial(field: PrimeField, c: i64, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = fq::reduce_i64(c, field.q());
        Poly::from_raw(field.q(), v)
    }

    /// Coefficients in increasing degree, reduced modulo `q`.
    pub fn from_coeffs(field: PrimeField, coeffs: &[i64]) -> Poly {
        let q = field.q();
        Poly::from_raw(q, coeffs.iter().map(|&v| fq::reduce_i64(v, q)).collect())
    }

    /// Wraps already-reduced residues and trims trailing zeros.
    pub(crate) fn from_raw(q: u32, mut c: Vec<u32>) -> Poly {
        debug_assert!(c.iter().all(|&x| x < q));
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { q, c }
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.q).expect("polynomials are only built over valid fields")
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    #[inline]
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Leading coefficient, `0` for the zero polynomial.
    pub fn lc(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn lc_elem(&self) -> FqElem {
        self.field().elem(self.lc() as i64)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = fq::inv(self.lc(), self.q).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, k: u32) -> Poly {
        let q = self.q;
        let k = k % q;
        Poly::from_raw(q, self.c.iter().map(|&x| fq::mul(x, k, q)).collect())
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.c);
        Poly { q: self.q, c: v }
    }

    fn check_same_ring(&self, o: &Poly) {
        assert_eq!(self.q, o.q, "mixing polynomials over different fields");
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.check_same_ring(o);
        let q = self.q;
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| fq::add(self.coeff(i), o.coeff(i), q)).collect();
        Poly::from_raw(q, v)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.check_same_ring(o);
        let q = self.q;
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| fq::sub(self.coeff(i), o.coeff(i), q)).collect();
        Poly::from_raw(q, v)
    }

    pub fn neg(&self) -> Poly {
        let q = self.q;
        Poly {
            q,
            c: self.c.iter().map(|&x| fq::neg(x, q)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.check_same_ring(o);
        if self.is_zero() || o.is_zero() {
            return Poly { q: self.q, c: vec![] };
        }
        Poly::from_raw(self.q, mul_raw(&self.c, &o.c, self.q))
    }

    pub fn square(&self) -> Poly {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Euclidean division: `self = quot * g + rem` with `deg rem < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_ring(g);
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.q;
        if self.c.len() < g.c.len() {
            return Ok((Poly { q, c: vec![] }, self.clone()));
        }
        let inv = fq::inv(g.lc(), q).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let dg = g.c.len() - 1;
        let mut quot = vec![0; r.len() - dg];
        for i in (dg..r.len()).rev() {
            let coef = r[i];
            if coef == 0 {
                continue;
            }
            let k = fq::mul(coef, inv, q);
            quot[i - dg] = k;
            let base = i - dg;
            for (j, &gj) in g.c.iter().enumerate() {
                r[base + j] = fq::sub(r[base + j], fq::mul(k, gj, q), q);
            }
        }
        r.truncate(dg);
        Ok((Poly::from_raw(q, quot), Poly::from_raw(q, r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.c.clone();
        reduce_raw(&mut r, &g.c, self.q);
        Ok(Poly::from_raw(self.q, r))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly> {
        let (quot, r) = self.divrem(g)?;
        if !r.is_zero() {
            return Err(Error::consistency(format!("{g} does not divide {self}")));
        }
        Ok(quot)
    }

    /// `g | self`; the zero polynomial divides only zero.
    pub fn is_divisible_by(&self, g: &Poly) -> bool {
        if g.is_zero() {
            return self.is_zero();
        }
        self.rem(g).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, g: &Poly) -> Poly {
        self.check_same_ring(g);
        let mut a = self.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(d, s, t)` with `d = s*self + t*g` monic (or zero).
    pub fn xgcd(&self, g: &Poly) -> (Poly, Poly, Poly) {
        self.check_same_ring(g);
        let field = self.field();
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (k, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&k.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&k.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fq::inv(r0.lc(), self.q).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Poly {
        let q = self.q;
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| fq::mul(x, (i as u64 % q as u64) as u32, q))
            .collect();
        Poly::from_raw(q, v)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let q = self.q;
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &ci| fq::add(fq::mul(acc, x, q), ci, q))
    }

    /// `self * g mod m`.
    pub fn mul_mod(&self, g: &Poly, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = if self.is_zero() || g.is_zero() {
            vec![]
        } else {
            mul_raw(&self.c, &g.c, self.q)
        };
        reduce_raw(&mut r, &m.c, self.q);
        Ok(Poly::from_raw(self.q, r))
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.q;
        let mut base = self.c.clone();
        reduce_raw(&mut base, &m.c, q);
        let mut acc = vec![1 % q];
        reduce_raw(&mut acc, &m.c, q);
        let bits = e.bits();
        for i in (0..bits).rev() {
            if !acc.is_empty() {
                acc = mul_raw(&acc, &acc, q);
                reduce_raw(&mut acc, &m.c, q);
            }
            if e.bit(i) && !acc.is_empty() {
                acc = if base.is_empty() {
                    vec![]
                } else {
                    mul_raw(&acc, &base, q)
                };
                reduce_raw(&mut acc, &m.c, q);
            }
        }
        Ok(Poly::from_raw(q, acc))
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Poly) -> Result<Poly> {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Coefficients in `F_q` are fixed by Frobenius, so in characteristic `p`
    /// a polynomial with vanishing derivative is `g(T^p) = g(T)^p`. Returns `g`.
    pub(crate) fn pth_root(&self) -> Option<Poly> {
        let p = self.q as usize;
        if self.c.iter().enumerate().any(|(i, &x)| x != 0 && i % p != 0) {
            return None;
        }
        let v = self.c.iter().step_by(p).copied().collect();
        Some(Poly::from_raw(self.q, v))
    }

    /// Evaluate at a polynomial argument: `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let field = self.field();
        self.c.iter().rev().fold(Poly::zero(field), |acc, &ci| {
            acc.mul(g).add(&Poly::constant(field, ci as i64))
        })
    }
}

/// Schoolbook product of raw coefficient slices. Requires `q < 2^16` so each
/// product is below `2^32` and sums of up to `2^32` of them fit in `u64`.
pub(crate) fn mul_raw(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let ai = ai as u64;
        for (slot, &bj) in acc[i..].iter_mut().zip(b) {
            *slot += ai * bj as u64;
        }
    }
    let q = q as u64;
    let mut out: Vec<u32> = acc.into_iter().map(|x| (x % q) as u32).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// In-place remainder by a nonzero modulus given as raw coefficients.
pub(crate) fn reduce_raw(r: &mut Vec<u32>, m: &[u32], q: u32) {
    while r.last() == Some(&0) {
        r.pop();
    }
    let dm = m.len() - 1;
    if r.len() <= dm {
        return;
    }
    let inv = fq::inv(m[dm], q).expect("nonzero leading coefficient");
    for i in (dm..r.len()).rev() {
        let coef = r[i];
        if coef == 0 {
            continue;
        }
        let k = fq::mul(coef, inv, q);
        let base = i - dm;
        for (j, &mj) in m.iter().enumerate() {
            r[base + j] = fq::sub(r[base + j], fq::mul(k, mj, q), q);
        }
    }
    r.truncate(dm);
    while r.last() == Some(&0) {
        r.pop();
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the leading term down. Over monic
/// polynomials of a fixed degree this is the order of the base-`q` integer
/// whose digits are the coefficients.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q
            .cmp(&other.q)
            .then(self.c.len().cmp(&other.c.len()))
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, c) => write!(f, "{c}*T")?,
                (k, 1) => write!(f, "T^{k}")?,
                (k, c) => write!(f, "{c}*T^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.q, self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                Poly::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
