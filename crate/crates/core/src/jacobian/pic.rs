//! Structure of `Pic^0` of `y^2 = d(x)` by sampling its Sylow subgroups.
//!
//! Every generator carries a lift: a degree-zero divisor supported away from
//! infinity, written as an integer combination of effective divisors. The ray
//! class computation needs these lifts to build principal relations.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::curve::HyperCurve;
use super::group::{presentation, AbGroupStruct};
use super::mumford::Divisor;
use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::gfpoly::{factorize, ExtField, Poly, PrimesOfDegree};
use crate::rng;
use crate::symbols::jacobi;

const SAMPLE_STREAM: u64 = 0x5049_4330;

/// An integer combination `sum c_i D_i` of effective divisors, of total degree zero.
pub type Formal = Vec<(i64, Divisor)>;

#[derive(Clone, Debug)]
pub struct Generator {
    /// Reduced representative of the class.
    pub class: Divisor,
    pub order: u64,
    pub lift: Formal,
}

#[derive(Clone, Debug)]
pub struct Pic0 {
    pub h: u64,
    pub structure: AbGroupStruct,
    pub generators: Vec<Generator>,
    /// Rows generating all integer relations among `generators`.
    pub relations: Vec<Vec<i64>>,
}

impl HyperCurve {
    /// The class of a formal degree-zero divisor.
    pub fn class_of(&self, f: &Formal) -> Divisor {
        let mut acc = self.identity();
        for (c, dv) in f {
            let r = if dv.degree() > self.genus() {
                self.reduce_semi(dv.u.clone(), dv.v.clone(), &mut |_, _| {})
            } else {
                dv.clone()
            };
            acc = self.add(&acc, &self.mul(&r, *c));
        }
        acc
    }

    /// Places above non-inert primes of smallest degree whose degrees have gcd 1.
    pub(crate) fn base_places(&self) -> Result<Vec<Divisor>> {
        let mut found: Vec<Divisor> = Vec::new();
        for n in 1..=64usize {
            for u in PrimesOfDegree::new(self.field(), n) {
                if let Some(pl) = self.place_over(u.poly())? {
                    let g0 = found.first().map(|b| b.degree());
                    match g0 {
                        None => found.push(pl),
                        Some(d0) if crate::arith::gcd(d0 as u64, n as u64) == 1 => {
                            found.push(pl);
                        }
                        _ => {}
                    }
                    if found.len() == 2 || found[0].degree() == 1 {
                        return Ok(found);
                    }
                    break;
                }
            }
        }
        Err(Error::BudgetExhausted("no base places of coprime degrees found".into()))
    }

    /// A place over the prime `u` when `u` is not inert, choosing the root
    /// `v` given by the square root routine.
    pub(crate) fn place_over(&self, u: &Poly) -> Result<Option<Divisor>> {
        match jacobi(self.d(), u)? {
            -1 => Ok(None),
            0 => Ok(Some(self.place(u.clone(), Poly::zero(self.field())))),
            _ => {
                let e = ExtField::with_modulus(crate::gfpoly::PrimePoly::new(u.clone())?);
                let r = e
                    .sqrt(&e.reduce(self.d()))
                    .ok_or_else(|| Error::consistency("missing square root"))?;
                Ok(Some(self.place(u.clone(), r.rep().clone())))
            }
        }
    }

    /// A random effective divisor of degree `n`: a square-free `u` all of whose
    /// prime factors split or ramify, and `v` assembled by CRT from random
    /// square roots.
    fn random_effective(&self, rng: &mut ChaCha8Rng, n: usize) -> Result<Option<Divisor>> {
        let f = self.field();
        let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(0..f.q()) as i64).collect();
        c.push(1);
        let u = Poly::from_coeffs(f, &c);
        let fac = factorize(&u)?;
        let mut v = Poly::zero(f);
        let mut modulus = Poly::one(f);
        for (pr, e) in &fac.factors {
            if *e > 1 {
                return Ok(None);
            }
            let Some(pl) = self.place_over(pr.poly())? else {
                return Ok(None);
            };
            let r = if rng.gen_bool(0.5) { pl.v } else { pl.v.neg() };
            // CRT: v' = v + modulus * s with v' = r mod pr
            let (_, inv, _) = modulus.xgcd(pr.poly());
            let s = r.sub(&v).mul(&inv).rem(pr.poly())?;
            v = v.add(&modulus.mul(&s));
            modulus = modulus.mul(pr.poly());
            v = v.rem(&modulus)?;
        }
        Ok(Some(Divisor { u, v }))
    }

    /// `(class, lift)` of a random element of `Pic^0`, as `M - sum w_i B_i`
    /// with `M` effective. Degrees of `M` range past `g`: with degree `g`
    /// alone, classes whose effective representatives involve infinity are
    /// missed, and on tiny curves that can be half the group.
    fn random_element(&self, rng: &mut ChaCha8Rng, base: &[Divisor]) -> Result<Option<(Divisor, Formal)>> {
        let n = rng.gen_range(1..=self.genus() + 3);
        let Some(m) = self.random_effective(rng, n)? else {
            return Ok(None);
        };
        let weights = balance(n as i64, base);
        let mut lift: Formal = vec![(1, m)];
        for (b, w) in base.iter().zip(&weights) {
            if *w != 0 {
                lift.push((-*w, b.clone()));
            }
        }
        Ok(Some((self.class_of(&lift), lift)))
    }

    /// Invariant factors of `Pic^0` with generator witnesses.
    pub fn group_structure(&self) -> Result<Pic0> {
        let h = self.l_polynomial()?.class_number()?;
        if self.genus() == 0 || h == 1 {
            return Ok(Pic0 {
                h,
                structure: AbGroupStruct::finite(vec![]),
                generators: vec![],
                relations: vec![],
            });
        }
        let base = self.base_places()?;
        let mut rng = rng::stream(SAMPLE_STREAM);
        let mut gens: Vec<Generator> = Vec::new();
        let mut rels: Vec<Vec<i64>> = Vec::new();
        for (l, e) in factor_u64(h) {
            let le = l.pow(e);
            let cof = (h / le) as i64;
            let offset = gens.len();
            let mut coords: HashMap<Divisor, Vec<i64>> = HashMap::new();
            coords.insert(self.identity(), vec![]);
            let mut local = 0usize;
            let budget = 200 + 40 * e as usize;
            let mut tries = 0;
            while (coords.len() as u64) < le {
                tries += 1;
                if tries > budget {
                    return Err(Error::BudgetExhausted(format!(
                        "{l}-Sylow subgroup: reached order {} of {le} after {budget} samples",
                        coords.len()
                    )));
                }
                let Some((x, lift)) = self.random_element(&mut rng, &base)? else {
                    continue;
                };
                if !self.mul_u64(&x, h).is_identity() {
                    return Err(Error::consistency(format!("h = {h} does not kill the class {x}")));
                }
                let y = self.mul(&x, cof);
                if coords.contains_key(&y) {
                    continue;
                }
                // smallest l-power k with k*y in the current subgroup
                let mut k: u64 = 1;
                let mut z = y.clone();
                let a = loop {
                    z = self.mul_u64(&z, l);
                    k *= l;
                    if let Some(c) = coords.get(&z) {
                        break c.clone();
                    }
                };
                let mut grown: HashMap<Divisor, Vec<i64>> = HashMap::with_capacity(coords.len() * k as usize);
                for (x0, c0) in &coords {
                    let mut cur = x0.clone();
                    for j in 0..k {
                        let mut c = c0.clone();
                        c.push(j as i64);
                        grown.insert(cur.clone(), c);
                        cur = self.add(&cur, &y);
                    }
                }
                coords = grown;
                let mut row = vec![0i64; offset + local + 1];
                for (i, ai) in a.iter().enumerate() {
                    row[offset + i] = -ai;
                }
                row[offset + local] = k as i64;
                rels.push(row);
                let order = self.order(&y, le);
                gens.push(Generator {
                    class: y,
                    order,
                    lift: lift.into_iter().map(|(c, dv)| (c * cof, dv)).collect(),
                });
                local += 1;
            }
        }
        let n = gens.len();
        let rows: Vec<Vec<BigInt>> = rels
            .iter()
            .map(|r| (0..n).map(|i| BigInt::from(*r.get(i).unwrap_or(&0))).collect())
            .collect();
        let structure = presentation(n, &rows)?;
        if structure.free_rank != 0 || structure.torsion_order() != h as u128 {
            return Err(Error::consistency(format!(
                "sampled structure {:?} does not have order h = {h}",
                structure.invariants
            )));
        }
        let relations = rels.into_iter().map(|mut r| {
            r.resize(n, 0);
            r
        });
        Ok(Pic0 {
            h,
            structure,
            generators: gens,
            relations: relations.collect(),
        })
    }
}

/// Integer weights `w_i` with `sum w_i deg(base_i) = n`.
fn balance(n: i64, base: &[Divisor]) -> Vec<i64> {
    let d0 = base[0].degree() as i64;
    if d0 == 1 || base.len() == 1 {
        return vec![n / d0];
    }
    let d1 = base[1].degree() as i64;
    // extended Euclid on the degrees
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (d0, d1, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    vec![s0 * n, t0 * n]
}
