//! Evaluating principal relations at the inert place `P` and at infinity.
//!
//! A relation `sum c_i D_i` that is principal equals `div(f)` for a function
//! `f` assembled from the Cantor steps. We never expand `f`; each factor is
//! evaluated on the fly. At `P` (over an inert prime `p`) a factor `a(x)` is
//! split as `p^k a'(x)` and only `a'(x0)` is kept; since `div(f)` avoids `P`
//! the powers of the uniformizer `p` cancel. At infinity we keep the leading
//! coefficient with respect to the uniformizer `t = x^g / y`, for which
//! `x ~ lc(d)^{-1} t^{-2}` and `y ~ lc(d)^{-g} t^{-2g-1}`.

use num_bigint::BigUint;

use super::curve::HyperCurve;
use super::mumford::{Divisor, Factor};
use super::pic::Formal;
use crate::error::{Error, Result};
use crate::gfpoly::{ExtField, FqElem, PrimePoly, QuadElem, QuadOver};

/// Value data of a function at `P` and at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnVal {
    at_p: QuadElem,
    val_p: i64,
    lc_inf: FqElem,
    val_inf: i64,
}

/// `P`, the unique place over an inert prime `p`, with residue field
/// `F_p[y]/(y^2 - d(x0))`.
#[derive(Clone, Debug)]
pub struct InertPlace {
    curve: HyperCurve,
    p: PrimePoly,
    residue: QuadOver,
}

impl InertPlace {
    pub fn new(curve: &HyperCurve, p: &PrimePoly) -> Result<InertPlace> {
        let fp = ExtField::with_modulus(p.clone());
        let r = fp.reduce(curve.d());
        if r.is_zero() || fp.quadratic_character(&r) != -1 {
            return Err(Error::invalid(format!("{p} is not inert in F(sqrt({}))", curve.d())));
        }
        let residue = QuadOver::new(fp, r)?;
        Ok(InertPlace {
            curve: curve.clone(),
            p: p.clone(),
            residue,
        })
    }

    pub fn residue(&self) -> &QuadOver {
        &self.residue
    }

    pub fn prime(&self) -> &PrimePoly {
        &self.p
    }

    pub fn one(&self) -> FnVal {
        FnVal {
            at_p: self.residue.one(),
            val_p: 0,
            lc_inf: self.curve.field().one(),
            val_inf: 0,
        }
    }

    fn lc_pow(&self, k: i64) -> FqElem {
        let l = self.curve.lc();
        let li = l.inv().expect("lc nonzero");
        if k >= 0 {
            l.pow(k as u64)
        } else {
            li.pow(k.unsigned_abs())
        }
    }

    pub fn factor(&self, f: &Factor) -> FnVal {
        let fp = self.residue.base();
        match f {
            Factor::Poly(a) => {
                let mut a2 = a.clone();
                let mut k = 0;
                while let Ok((quo, rem)) = a2.divrem(self.p.poly()) {
                    if !rem.is_zero() {
                        break;
                    }
                    a2 = quo;
                    k += 1;
                }
                let deg = a.deg();
                FnVal {
                    at_p: self.residue.embed(fp.reduce(&a2)),
                    val_p: k,
                    lc_inf: a.lc_elem().mul(self.lc_pow(-deg)),
                    val_inf: -2 * deg,
                }
            }
            Factor::Line(v) => {
                let at_p = QuadElem {
                    a: fp.neg(&fp.reduce(v)),
                    b: fp.one(),
                };
                let g = self.curve.genus() as i64;
                let (lc_inf, val_inf) = if 2 * v.deg() > 2 * g + 1 {
                    (v.lc_elem().neg().mul(self.lc_pow(-v.deg())), -2 * v.deg())
                } else {
                    (self.lc_pow(-g), -(2 * g + 1))
                };
                FnVal {
                    at_p,
                    val_p: 0,
                    lc_inf,
                    val_inf,
                }
            }
        }
    }

    pub fn mul(&self, a: &FnVal, b: &FnVal) -> FnVal {
        FnVal {
            at_p: self.residue.mul(&a.at_p, &b.at_p),
            val_p: a.val_p + b.val_p,
            lc_inf: a.lc_inf.mul(b.lc_inf),
            val_inf: a.val_inf + b.val_inf,
        }
    }

    pub fn pow(&self, a: &FnVal, k: i64) -> FnVal {
        let (base_p, base_inf) = if k < 0 {
            (
                self.residue.inv(&a.at_p).expect("unit at P"),
                a.lc_inf.inv().expect("unit at infinity"),
            )
        } else {
            (a.at_p.clone(), a.lc_inf)
        };
        let e = k.unsigned_abs();
        FnVal {
            at_p: self.residue.pow(&base_p, &BigUint::from(e)),
            val_p: a.val_p * k,
            lc_inf: base_inf.pow(e),
            val_inf: a.val_inf * k,
        }
    }

    fn absorb(&self, acc: &mut FnVal, f: Factor, e: i64) {
        let v = self.factor(&f);
        *acc = self.mul(acc, &self.pow(&v, e));
    }

    /// `a + b = c + div(h)`, returning `(c, h)`.
    pub fn add(&self, a: &Divisor, b: &Divisor) -> (Divisor, FnVal) {
        let mut h = self.one();
        let c = self.curve.add_with(a, b, &mut |f, e| self.absorb(&mut h, f, e));
        (c, h)
    }

    /// Reduces a possibly oversized effective divisor: `a = c + div(h)`.
    fn reduce(&self, a: &Divisor) -> (Divisor, FnVal) {
        let mut h = self.one();
        if a.degree() <= self.curve.genus() {
            return (a.clone(), h);
        }
        let c = self
            .curve
            .reduce_semi(a.u.clone(), a.v.clone(), &mut |f, e| self.absorb(&mut h, f, e));
        (c, h)
    }

    /// `k a = c + div(f)`, returning `(c, f)`.
    pub fn mul_divisor(&self, a: &Divisor, k: i64) -> (Divisor, FnVal) {
        let (a, fa) = self.reduce(a);
        // -a = neg(a) - div(u)
        let (base, fb) = if k < 0 {
            let inv_u = self.pow(&self.factor(&Factor::Poly(a.u.clone())), -1);
            (self.curve.neg(&a), self.mul(&self.pow(&fa, -1), &inv_u))
        } else {
            (a.clone(), fa)
        };
        let e = k.unsigned_abs();
        let mut acc = self.curve.identity();
        let mut f = self.one();
        for i in (0..64 - e.leading_zeros()).rev() {
            let (d, h) = self.add(&acc, &acc);
            f = self.mul(&self.pow(&f, 2), &h);
            acc = d;
            if e >> i & 1 == 1 {
                let (s, h) = self.add(&acc, &base);
                f = self.mul(&f, &h);
                acc = s;
            }
        }
        // k a = |k| base + |k| div(fb)
        (acc, self.mul(&f, &self.pow(&fb, e as i64)))
    }

    /// `f(P) / f(inf)` for `div(f) = sum c_i D_i`, which must be principal,
    /// of degree zero and supported away from `P` and infinity.
    pub fn evaluate(&self, rel: &Formal) -> Result<QuadElem> {
        let deg: i64 = rel.iter().map(|(c, dv)| c * dv.degree() as i64).sum();
        if deg != 0 {
            return Err(Error::invalid("relation does not have degree zero"));
        }
        for (_, dv) in rel {
            if dv.u.is_divisible_by(self.p.poly()) {
                return Err(Error::invalid(format!("support of {dv} meets P")));
            }
        }
        let mut total = self.curve.identity();
        let mut f = self.one();
        for (c, dv) in rel {
            let (r, fr) = self.mul_divisor(dv, *c);
            let (s, h) = self.add(&total, &r);
            f = self.mul(&self.mul(&f, &fr), &h);
            total = s;
        }
        if !total.is_identity() {
            return Err(Error::invalid(format!("relation is not principal: class {total}")));
        }
        if f.val_p != 0 || f.val_inf != 0 {
            return Err(Error::consistency(format!(
                "Miller function has valuation {} at P and {} at infinity",
                f.val_p, f.val_inf
            )));
        }
        let inf = self.residue.embed(self.residue.base().from_fq(f.lc_inf.value()));
        Ok(self.residue.mul(&f.at_p, &self.residue.inv(&inf)?))
    }
}

/// Free-standing entry point: evaluate a principal relation at `P`.
pub fn miller_evaluate(curve: &HyperCurve, p: &PrimePoly, rel: &Formal) -> Result<QuadElem> {
    InertPlace::new(curve, p)?.evaluate(rel)
}

/// `a(x0)` in the residue field at `P`.
#[cfg(test)]
pub(crate) fn residue_of(place: &InertPlace, a: &crate::gfpoly::Poly) -> QuadElem {
    place.residue.embed(place.residue.base().reduce(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::{parse_poly, PrimeField};

    fn setup() -> (HyperCurve, PrimePoly) {
        let f = PrimeField::new(3).unwrap();
        let c = HyperCurve::new(parse_poly(f, "T^5+2*T+1").unwrap()).unwrap();
        // find an inert prime of degree 2
        let p = crate::gfpoly::PrimesOfDegree::new(f, 2)
            .find(|p| c.place_over(p.poly()).unwrap().is_none())
            .unwrap();
        (c, p)
    }

    #[test]
    fn ratio_of_vertical_lines() {
        // P_a + P_a' - P_c - P_c' = div((x - a) / (x - c)), both sides monic
        let (c, p) = setup();
        let pl = InertPlace::new(&c, &p).unwrap();
        let f = c.field();
        let split: Vec<Divisor> = crate::gfpoly::PrimesOfDegree::new(f, 1)
            .filter_map(|u| c.place_over(u.poly()).unwrap())
            .filter(|dv| !dv.v.is_zero())
            .take(2)
            .collect();
        assert_eq!(split.len(), 2);
        let (a, b) = (&split[0], &split[1]);
        let rel: Formal = vec![(1, a.clone()), (1, c.neg(a)), (-1, b.clone()), (-1, c.neg(b))];
        let v = pl.evaluate(&rel).unwrap();
        let expect = pl
            .residue
            .mul(&residue_of(&pl, &a.u), &pl.residue.inv(&residue_of(&pl, &b.u)).unwrap());
        assert_eq!(v, expect);
    }

    #[test]
    fn doubling_squares() {
        let (c, p) = setup();
        let pl = InertPlace::new(&c, &p).unwrap();
        let pic = c.group_structure().unwrap();
        for (g, row) in pic.generators.iter().zip(&pic.relations) {
            let _ = g;
            let mut rel: Formal = Vec::new();
            for (k, gen) in row.iter().zip(&pic.generators) {
                for (c0, dv) in &gen.lift {
                    rel.push((k * c0, dv.clone()));
                }
            }
            let r1 = pl.evaluate(&rel).unwrap();
            let rel2: Formal = rel.iter().map(|(k, dv)| (2 * k, dv.clone())).collect();
            let r2 = pl.evaluate(&rel2).unwrap();
            assert_eq!(r2, pl.residue.mul(&r1, &r1));
        }
        assert!(pl.residue.is_one(&pl.evaluate(&vec![]).unwrap()));
    }
}
