//! Finite fields `F_{q^n} = F_q[T]/(m)` and quadratic extensions on top of them.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::enumerate::{index_to_monic, PrimesOfDegree};
use super::factor::PrimePoly;
use super::fq::{self, PrimeField};
use super::poly::{mul_raw, reduce_raw, Poly};
use crate::arith::factor_u64;
use crate::error::{Error, Result};

/// Element of an extension field: a residue of degree below the field degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ExtElem(Poly);

impl ExtElem {
    pub fn rep(&self) -> &Poly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// `F_{q^n}` presented by a monic irreducible modulus of degree `n`.
#[derive(Clone, Debug)]
pub struct ExtField {
    base: PrimeField,
    modulus: PrimePoly,
    order: BigUint,
}

impl ExtField {
    /// Uses the smallest monic irreducible of degree `n` as modulus.
    pub fn new(base: PrimeField, n: usize) -> Result<ExtField> {
        if n == 0 {
            return Err(Error::invalid("extension degree must be positive"));
        }
        let modulus = PrimesOfDegree::new(base, n)
            .next()
            .expect("irreducibles exist in every degree");
        Ok(ExtField::with_modulus(modulus))
    }

    pub fn with_modulus(modulus: PrimePoly) -> ExtField {
        let base = modulus.field();
        let order = modulus.norm();
        ExtField { base, modulus, order }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn modulus(&self) -> &PrimePoly {
        &self.modulus
    }

    /// `q^n`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(Poly::zero(self.base))
    }

    pub fn one(&self) -> ExtElem {
        self.from_fq(1)
    }

    pub fn from_fq(&self, v: u32) -> ExtElem {
        ExtElem(Poly::constant(self.base, v as i64))
    }

    /// Residue class of an arbitrary polynomial.
    pub fn reduce(&self, f: &Poly) -> ExtElem {
        ExtElem(f.rem(&self.modulus).expect("nonzero modulus"))
    }

    /// The class of `T`, a root of the modulus.
    pub fn generator(&self) -> ExtElem {
        self.reduce(&Poly::t(self.base))
    }

    /// Element number `i` in a fixed enumeration (base-`q` digits as coefficients).
    pub fn element(&self, i: u64) -> ExtElem {
        let n = self.degree();
        let f = index_to_monic(self.base, n, i);
        // drop the monic leading term
        let mut c = f.coeffs().to_vec();
        c.truncate(n);
        ExtElem(Poly::from_raw(self.base.q(), c))
    }

    /// All `q^n` elements; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let count = self.order_u64().expect("field small enough to enumerate");
        (0..count).map(move |i| self.element(i))
    }

    pub fn as_fq(&self, x: &ExtElem) -> Option<u32> {
        x.0.is_constant().then(|| x.0.coeff(0))
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.add(&b.0))
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.sub(&b.0))
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.neg())
    }

    pub fn scale(&self, a: &ExtElem, k: u32) -> ExtElem {
        ExtElem(a.0.scale(k))
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let q = self.base.q();
        let mut r = mul_raw(a.0.coeffs(), b.0.coeffs(), q);
        reduce_raw(&mut r, self.modulus.coeffs(), q);
        ExtElem(Poly::from_raw(q, r))
    }

    pub fn square(&self, a: &ExtElem) -> ExtElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (d, s, _) = a.0.xgcd(&self.modulus);
        debug_assert!(d.is_one());
        Ok(self.reduce(&s))
    }

    pub fn div(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        ExtElem(a.0.pow_mod(e, &self.modulus).expect("nonzero modulus"))
    }

    pub fn pow_u64(&self, a: &ExtElem, e: u64) -> ExtElem {
        self.pow(a, &BigUint::from(e))
    }

    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow_u64(a, self.base.q() as u64)
    }

    /// `a^(q^k)`.
    pub fn frobenius_pow(&self, a: &ExtElem, k: usize) -> ExtElem {
        (0..k % self.degree()).fold(a.clone(), |x, _| self.frobenius(&x))
    }

    fn check_subfield(&self, m: usize) -> Result<()> {
        if m == 0 || !self.degree().is_multiple_of(m) {
            return Err(Error::invalid(format!(
                "F_(q^{m}) is not a subfield of F_(q^{})",
                self.degree()
            )));
        }
        Ok(())
    }

    /// `N(x) = x^((q^n - 1)/(q^m - 1))`, landing in `F_{q^m}` (as an element here).
    pub fn norm_to_subfield(&self, x: &ExtElem, m: usize) -> Result<ExtElem> {
        self.check_subfield(m)?;
        let q = BigUint::from(self.base.q());
        let e = (&self.order - 1u32) / (q.pow(m as u32) - 1u32);
        Ok(self.pow(x, &e))
    }

    /// `sum_{i < n/m} x^(q^(m i))`.
    pub fn trace_to_subfield(&self, x: &ExtElem, m: usize) -> Result<ExtElem> {
        self.check_subfield(m)?;
        let mut acc = self.zero();
        let mut cur = x.clone();
        for _ in 0..self.degree() / m {
            acc = self.add(&acc, &cur);
            cur = self.frobenius_pow(&cur, m);
        }
        Ok(acc)
    }

    pub fn norm(&self, x: &ExtElem) -> u32 {
        let v = self.norm_to_subfield(x, 1).expect("prime field is a subfield");
        self.as_fq(&v).expect("norm lies in the prime field")
    }

    pub fn trace(&self, x: &ExtElem) -> u32 {
        let v = self.trace_to_subfield(x, 1).expect("prime field is a subfield");
        self.as_fq(&v).expect("trace lies in the prime field")
    }

    /// Quadratic character: `0`, `1` or `-1`. Uses `chi(x) = chi_q(N(x))`.
    pub fn quadratic_character(&self, x: &ExtElem) -> i8 {
        if x.is_zero() {
            return 0;
        }
        fq::quadratic_character(self.norm(x), self.base.q())
    }

    /// True for nonzero squares.
    pub fn is_square(&self, x: &ExtElem) -> bool {
        self.quadratic_character(x) == 1
    }

    /// Smallest (in enumeration order) non-square.
    pub fn non_square(&self) -> ExtElem {
        (1..)
            .map(|i| self.element(i))
            .find(|x| self.quadratic_character(x) == -1)
            .expect("odd fields have non-squares")
    }

    /// Square root by Tonelli-Shanks; `None` for non-squares.
    pub fn sqrt(&self, x: &ExtElem) -> Option<ExtElem> {
        if x.is_zero() {
            return Some(self.zero());
        }
        if self.base.q() == 2 {
            // squaring is bijective: sqrt(x) = x^(2^(n-1))
            return Some(self.pow(x, &(&self.order >> 1u32)));
        }
        if !self.is_square(x) {
            return None;
        }
        let qm1 = &self.order - 1u32;
        let s = qm1.trailing_zeros().expect("nonzero") as u32;
        let t = &qm1 >> s;
        let z = self.non_square();
        let mut m = s;
        let mut c = self.pow(&z, &t);
        let mut tt = self.pow(x, &t);
        let mut r = self.pow(x, &((&t + 1u32) >> 1u32));
        while !tt.is_one() {
            let mut i = 0;
            let mut probe = tt.clone();
            while !probe.is_one() {
                probe = self.square(&probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..m - i - 1 {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        debug_assert_eq!(self.square(&r), *x);
        Some(r)
    }

    /// Multiplicative order of a nonzero element, given the factorization of `q^n - 1`.
    pub fn element_order(&self, x: &ExtElem, group_factors: &[(u64, u32)]) -> u64 {
        let n = self.order_u64().expect("unit group order fits in u64") - 1;
        let mut ord = n;
        for &(p, e) in group_factors {
            for _ in 0..e {
                if self.pow_u64(x, ord / p).is_one() {
                    ord /= p;
                } else {
                    break;
                }
            }
        }
        ord
    }

    /// First element in enumeration order generating `F_{q^n}^*`.
    pub fn primitive_element(&self) -> Result<ExtElem> {
        let n = self
            .order_u64()
            .ok_or_else(|| Error::Unsupported("unit group order exceeds 64 bits".into()))?
            - 1;
        let factors = factor_u64(n);
        Ok((1..)
            .map(|i| self.element(i))
            .find(|x| self.element_order(x, &factors) == n)
            .expect("cyclic unit group has generators"))
    }

    /// Evaluate a polynomial with coefficients in `F_q` at an element.
    pub fn eval(&self, f: &Poly, x: &ExtElem) -> ExtElem {
        f.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, x), &self.from_fq(c)))
    }

    pub fn unit_order(&self) -> BigUint {
        &self.order - BigUint::one()
    }
}

/// Quadratic extension `L = E[Y]/(Y^2 - r)` of an odd extension field `E`,
/// `r` a non-square. Elements are pairs `(a, b)` meaning `a + bY`.
#[derive(Clone, Debug)]
pub struct QuadOver {
    base: ExtField,
    r: ExtElem,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadElem {
    pub a: ExtElem,
    pub b: ExtElem,
}

impl QuadOver {
    pub fn new(base: ExtField, r: ExtElem) -> Result<QuadOver> {
        if base.base().q() == 2 {
            return Err(Error::Unsupported("characteristic 2".into()));
        }
        if base.quadratic_character(&r) != -1 {
            return Err(Error::invalid("quadratic extension needs a non-square"));
        }
        Ok(QuadOver { base, r })
    }

    pub fn base(&self) -> &ExtField {
        &self.base
    }

    /// The distinguished non-square `r = Y^2`.
    pub fn radicand(&self) -> &ExtElem {
        &self.r
    }

    /// `|L^*| = |E|^2 - 1`.
    pub fn unit_order(&self) -> BigUint {
        self.base.order().pow(2u32) - 1u32
    }

    pub fn one(&self) -> QuadElem {
        self.embed(self.base.one())
    }

    pub fn embed(&self, a: ExtElem) -> QuadElem {
        QuadElem { a, b: self.base.zero() }
    }

    /// The element `Y`.
    pub fn y(&self) -> QuadElem {
        QuadElem {
            a: self.base.zero(),
            b: self.base.one(),
        }
    }

    pub fn is_zero(&self, x: &QuadElem) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }

    pub fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: self.base.add(&x.a, &y.a),
            b: self.base.add(&x.b, &y.b),
        }
    }

    pub fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: self.base.sub(&x.a, &y.a),
            b: self.base.sub(&x.b, &y.b),
        }
    }

    pub fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let e = &self.base;
        let bb = e.mul(&x.b, &y.b);
        QuadElem {
            a: e.add(&e.mul(&x.a, &y.a), &e.mul(&bb, &self.r)),
            b: e.add(&e.mul(&x.a, &y.b), &e.mul(&x.b, &y.a)),
        }
    }

    /// Conjugation `Y -> -Y`, which is the `|E|`-power Frobenius.
    pub fn conj(&self, x: &QuadElem) -> QuadElem {
        QuadElem {
            a: x.a.clone(),
            b: self.base.neg(&x.b),
        }
    }

    /// Norm to `E`: `a^2 - r b^2`.
    pub fn norm(&self, x: &QuadElem) -> ExtElem {
        let e = &self.base;
        e.sub(&e.square(&x.a), &e.mul(&self.r, &e.square(&x.b)))
    }

    pub fn inv(&self, x: &QuadElem) -> Result<QuadElem> {
        let n = self.norm(x);
        let ni = self.base.inv(&n)?;
        let c = self.conj(x);
        Ok(QuadElem {
            a: self.base.mul(&c.a, &ni),
            b: self.base.mul(&c.b, &ni),
        })
    }

    pub fn pow(&self, x: &QuadElem, e: &BigUint) -> QuadElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    pub fn pow_u64(&self, x: &QuadElem, e: u64) -> QuadElem {
        self.pow(x, &BigUint::from(e))
    }

    pub fn is_one(&self, x: &QuadElem) -> bool {
        x.a.is_one() && x.b.is_zero()
    }
}
