//! Reduced divisors in Mumford form and Cantor's group law.
//!
//! A pair `(u, v)` with `u` monic, `deg v < deg u` and `u | v^2 - d` stands for
//! the degree-zero class `D - deg(u) * inf`. Each Cantor step also reports the
//! functions it divides out, so callers can follow Miller's bookkeeping: the
//! step `D1 + D2 -> D3` satisfies `D1 + D2 = D3 + div(h)` where `h` is a product
//! of polynomials `a(x)` and lines `y - v(x)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::curve::HyperCurve;
use crate::error::{Error, Result};
use crate::gfpoly::{parse_poly, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    pub u: Poly,
    pub v: Poly,
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text form of a divisor for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorText {
    pub u: String,
    pub v: String,
}

impl Divisor {
    pub fn to_text(&self) -> DivisorText {
        DivisorText {
            u: self.u.to_string(),
            v: self.v.to_string(),
        }
    }

    pub fn from_text(c: &HyperCurve, t: &DivisorText) -> Result<Divisor> {
        let f = c.field();
        c.divisor(parse_poly(f, &t.u)?, parse_poly(f, &t.v)?)
    }

    pub fn degree(&self) -> usize {
        self.u.deg() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }
}

/// One factor of a Miller function, raised to `exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// The polynomial `a(x)`.
    Poly(Poly),
    /// The line `y - v(x)`.
    Line(Poly),
}

impl HyperCurve {
    pub fn identity(&self) -> Divisor {
        Divisor {
            u: Poly::one(self.field()),
            v: Poly::zero(self.field()),
        }
    }

    /// Validates `(u, v)` as a reduced representative.
    pub fn divisor(&self, u: Poly, v: Poly) -> Result<Divisor> {
        if !u.is_monic() {
            return Err(Error::invalid(format!("u = {u} is not monic")));
        }
        if u.deg() as usize > self.genus() {
            return Err(Error::invalid(format!(
                "deg u = {} exceeds the genus {}",
                u.deg(),
                self.genus()
            )));
        }
        if v.deg() >= u.deg() {
            return Err(Error::invalid("deg v must be below deg u"));
        }
        if !v.square().sub(self.d()).is_divisible_by(&u) {
            return Err(Error::invalid(format!("u does not divide v^2 - d for ({u}, {v})")));
        }
        Ok(Divisor { u, v })
    }

    /// The prime divisor over the point `u = 0, y = v(x)`; `u` monic
    /// irreducible with `u | v^2 - d`. Degree may exceed `g`.
    pub(crate) fn place(&self, u: Poly, v: Poly) -> Divisor {
        debug_assert!(v.square().sub(self.d()).is_divisible_by(&u));
        Divisor { u, v }
    }

    /// Inverse class `(u, -v)`; note `D + neg(D) = div(u(x))`.
    pub fn neg(&self, a: &Divisor) -> Divisor {
        Divisor {
            u: a.u.clone(),
            v: a.v.neg(),
        }
    }

    pub fn add(&self, a: &Divisor, b: &Divisor) -> Divisor {
        self.add_with(a, b, &mut |_, _| {})
    }

    /// Cantor composition and reduction, reporting each divided-out factor.
    pub fn add_with(&self, a: &Divisor, b: &Divisor, sink: &mut impl FnMut(Factor, i64)) -> Divisor {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let (d1, e1, e2) = a.u.xgcd(&b.u);
        let (d, c1, c2) = d1.xgcd(&a.v.add(&b.v));
        let s1 = c1.mul(&e1);
        let s2 = c1.mul(&e2);
        let s3 = c2;
        let mut u = a.u.mul(&b.u).exact_div(&d.square()).expect("d^2 divides u1 u2");
        let num = s1
            .mul(&a.u)
            .mul(&b.v)
            .add(&s2.mul(&b.u).mul(&a.v))
            .add(&s3.mul(&a.v.mul(&b.v).add(self.d())));
        let mut v = num
            .exact_div(&d)
            .expect("d divides the composed v")
            .rem(&u)
            .expect("u nonzero");
        if !d.is_one() {
            sink(Factor::Poly(d), 1);
        }
        self.reduce_with(&mut u, &mut v, sink);
        Divisor { u, v }
    }

    /// Reduces a semi-reduced `(u, v)` in place.
    fn reduce_with(&self, u: &mut Poly, v: &mut Poly, sink: &mut impl FnMut(Factor, i64)) {
        let g = self.genus() as i64;
        while u.deg() > g {
            let u2 = self
                .d()
                .sub(&v.square())
                .exact_div(u)
                .expect("u divides d - v^2")
                .monic();
            let v2 = v.neg().rem(&u2).expect("u2 nonzero");
            sink(Factor::Line(v.clone()), 1);
            sink(Factor::Poly(u2.clone()), -1);
            *u = u2;
            *v = v2;
        }
    }

    /// Reduces a semi-reduced pair, as produced by composing places.
    pub(crate) fn reduce_semi(&self, mut u: Poly, mut v: Poly, sink: &mut impl FnMut(Factor, i64)) -> Divisor {
        v = v.rem(&u).expect("u nonzero");
        self.reduce_with(&mut u, &mut v, sink);
        Divisor { u, v }
    }

    pub fn double(&self, a: &Divisor) -> Divisor {
        self.add(a, a)
    }

    /// `k * a` for an integer `k`.
    pub fn mul(&self, a: &Divisor, k: i64) -> Divisor {
        let base = if k < 0 { self.neg(a) } else { a.clone() };
        let e = k.unsigned_abs();
        let mut acc = self.identity();
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = self.double(&acc);
            if e >> i & 1 == 1 {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    pub fn mul_u64(&self, a: &Divisor, e: u64) -> Divisor {
        let mut acc = self.identity();
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = self.double(&acc);
            if e >> i & 1 == 1 {
                acc = self.add(&acc, a);
            }
        }
        acc
    }

    /// Order of `a` given a multiple `n` of it (such as the class number).
    pub fn order(&self, a: &Divisor, n: u64) -> u64 {
        let mut ord = n;
        for (l, e) in crate::arith::factor_u64(n.max(1)) {
            for _ in 0..e {
                if self.mul_u64(a, ord / l).is_identity() {
                    ord /= l;
                } else {
                    break;
                }
            }
        }
        ord
    }
}
