//! Weil data of a prime `y` and the congruence sets built from them, for
//! quaternion algebras (`d = 2`).
//!
//! A Weil datum is a quadratic `M(X) = X^2 - tX + mu*y` over `A` whose roots
//! `pi, pi'` behave like Frobenius elements of a rank-two Drinfeld module with
//! good reduction at `y`. For `d = 2` the admissibility conditions collapse to
//! `deg t <= deg(y)/2` together with `t^2 - 4 mu y` being a non-square in the
//! completion `F_inf`: the latter gives irreducibility and a single place
//! over `inf`, the Newton polygon at `inf` then has the single slope
//! `deg(y)/2`, and uniqueness of the prime above `y` dividing `pi` is
//! automatic because `pi pi' = mu y` has `y`-valuation one.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfpoly::{polys_up_to_degree, ExtElem, ExtField, Poly, PrimePoly};
use crate::symbols::{
    infinity_type_of, quaternion_split_by, split_type_of_radicand, Place, QuadExt, QuaternionD, SplitType,
};

/// The data `(t, mu)` of `X^2 - tX + mu*y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilDatum {
    pub t: Poly,
    pub mu: u32,
    pub y: PrimePoly,
}

impl WeilDatum {
    /// `b = pi pi' = mu y`.
    pub fn norm(&self) -> Poly {
        self.y.scale(self.mu)
    }

    /// `t^2 - 4 mu y`.
    pub fn discriminant(&self) -> Poly {
        self.t.square().sub(&self.norm().scale(4 % self.y.q()))
    }

    /// Coefficients `[mu*y, -t, 1]` of `M(X)` in increasing powers of `X`.
    pub fn min_poly(&self) -> [Poly; 3] {
        [self.norm(), self.t.neg(), Poly::one(self.y.field())]
    }
}

/// Admissibility of `(t, mu)` for the prime `y`.
pub fn is_weil_datum(t: &Poly, mu: u32, y: &PrimePoly) -> bool {
    let q = y.q();
    if mu.is_multiple_of(q) || 2 * t.deg() > y.deg() {
        return false;
    }
    let w = WeilDatum {
        t: t.clone(),
        mu,
        y: y.clone(),
    };
    infinity_type_of(&w.discriminant()) != SplitType::Split
}

/// All Weil data of `y`, ordered by `t` (canonical order, zero first) then `mu`.
pub fn enumerate_weil(y: &PrimePoly) -> Result<Vec<WeilDatum>> {
    let field = y.field();
    if field.q() == 2 {
        return Err(Error::Unsupported("Weil data need odd characteristic".into()));
    }
    let bound = y.deg() / 2;
    let mut out = Vec::new();
    for t in polys_up_to_degree(field, bound) {
        for mu in 1..field.q() {
            if is_weil_datum(&t, mu, y) {
                out.push(WeilDatum {
                    t: t.clone(),
                    mu,
                    y: y.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// `s_r = pi^r + pi'^r` from `s_0 = 2`, `s_1 = t`, `s_r = t s_{r-1} - mu y s_{r-2}`.
pub fn power_sum(w: &WeilDatum, r: u64) -> Poly {
    let field = w.y.field();
    let b = w.norm();
    let mut prev = Poly::constant(field, 2);
    if r == 0 {
        return prev;
    }
    let mut cur = w.t.clone();
    for _ in 1..r {
        let next = w.t.mul(&cur).sub(&b.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// The integers `d = 2`, `m = d(q^d - 1)` and `n' = d (q^(sd) - 1)/(q^s - 1) (q^d - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceParams {
    pub d: u32,
    pub m: u64,
    pub s: u32,
    pub n_prime: u64,
}

impl CongruenceParams {
    pub fn new(q: u32, s: u32) -> Result<CongruenceParams> {
        if s == 0 {
            return Err(Error::invalid("s must be positive"));
        }
        let d = 2u32;
        let q = q as u64;
        let qd1 = q.pow(d) - 1;
        let m = d as u64 * qd1;
        let qs = q
            .checked_pow(s)
            .ok_or_else(|| Error::Unsupported("q^s too large".into()))?;
        // (q^(2s) - 1)/(q^s - 1) = q^s + 1
        let n_prime = (d as u64)
            .checked_mul(qs + 1)
            .and_then(|x| x.checked_mul(qd1))
            .ok_or_else(|| Error::Unsupported("n' too large".into()))?;
        Ok(CongruenceParams { d, m, s, n_prime })
    }
}

/// `{pi^(dm) + pi'^(dm) : pi in W(y)}`.
pub fn c_set(y: &PrimePoly) -> Result<BTreeSet<Poly>> {
    let params = CongruenceParams::new(y.q(), 1)?;
    let e = params.d as u64 * params.m;
    Ok(enumerate_weil(y)?.iter().map(|w| power_sum(w, e)).collect())
}

/// Elements of `F_{q^(2s)}` with `eps^(1 + q^s) = 1`, as powers of a generator.
pub fn norm_one_elements(field: &ExtField, s: usize) -> Result<Vec<ExtElem>> {
    if field.degree() != 2 * s {
        return Err(Error::invalid("norm-one elements need F_(q^(2s))"));
    }
    let qs = (field.base().q() as u64)
        .checked_pow(s as u32)
        .ok_or_else(|| Error::Unsupported("q^s too large".into()))?;
    let g = field.primitive_element()?;
    let h = field.pow_u64(&g, qs - 1);
    let mut out = Vec::with_capacity(qs as usize + 1);
    let mut cur = field.one();
    for _ in 0..=qs {
        out.push(cur.clone());
        cur = field.mul(&cur, &h);
    }
    Ok(out)
}

/// Coefficients (in `F_q`, increasing degree) of `prod_{i<s} (X - tau^(q^i))`.
fn conjugate_charpoly(field: &ExtField, tau: &ExtElem, s: usize) -> Result<Vec<u32>> {
    let mut coeffs = vec![field.one()];
    let mut conj = tau.clone();
    for _ in 0..s {
        // multiply by (X - conj)
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            next[i] = field.sub(&next[i], &field.mul(c, &conj));
        }
        coeffs = next;
        conj = field.frobenius(&conj);
    }
    coeffs
        .iter()
        .map(|c| {
            field
                .as_fq(c)
                .ok_or_else(|| Error::consistency("conjugate product left the prime field"))
        })
        .collect()
}

/// `{ N(c - (eps + 1/eps) y^m) : c in C(y), eps^(1+q^s) = 1 }`, the norm taken
/// from `F_{q^s}(T)` down to `F`.
///
/// With `tau = eps + eps^(q^s)` and `chi(X) = prod_{i<s} (X - tau^(q^i))` the
/// norm is the homogenization `sum_j chi_j c^j (y^m)^(s-j)`, so only the
/// distinct polynomials `chi` need to be formed over the extension.
pub fn d_set(y: &PrimePoly, s: u32) -> Result<BTreeSet<Poly>> {
    let params = CongruenceParams::new(y.q(), s)?;
    let field = y.field();
    let s = s as usize;
    let ext = ExtField::new(field, 2 * s)?;
    let mut chis: BTreeSet<Vec<u32>> = BTreeSet::new();
    for eps in norm_one_elements(&ext, s)? {
        let tau = ext.add(&eps, &ext.frobenius_pow(&eps, s));
        chis.insert(conjugate_charpoly(&ext, &tau, s)?);
    }
    let ym = y.pow(params.m);
    let ym_pows: Vec<Poly> = (0..=s).map(|j| ym.pow(j as u64)).collect();
    let mut out = BTreeSet::new();
    for c in c_set(y)? {
        let c_pows: Vec<Poly> = (0..=s).map(|j| c.pow(j as u64)).collect();
        for chi in &chis {
            let mut acc = Poly::zero(field);
            for (j, &cj) in chi.iter().enumerate() {
                if cj != 0 {
                    acc = acc.add(&c_pows[j].mul(&ym_pows[s - j]).scale(cj));
                }
            }
            out.insert(acc);
        }
    }
    Ok(out)
}

/// `X^e mod M(X)` in `A[X]`, returned as `(alpha, beta)` meaning `alpha X + beta`.
pub fn x_power_mod_min_poly(w: &WeilDatum, e: &BigUint) -> (Poly, Poly) {
    let field = w.y.field();
    let b = w.norm();
    // (a1 X + b1)(a2 X + b2) with X^2 = tX - b
    let mul = |(a1, b1): &(Poly, Poly), (a2, b2): &(Poly, Poly)| {
        let aa = a1.mul(a2);
        let alpha = a1.mul(b2).add(&b1.mul(a2)).add(&aa.mul(&w.t));
        let beta = b1.mul(b2).sub(&aa.mul(&b));
        (alpha, beta)
    };
    let x = (Poly::one(field), Poly::zero(field));
    let mut acc = (Poly::zero(field), Poly::one(field));
    for i in (0..e.bits()).rev() {
        acc = mul(&acc, &acc);
        if e.bit(i) {
            acc = mul(&acc, &x);
        }
    }
    acc
}

/// `N(alpha pi + beta) = alpha^2 pi pi' + alpha beta (pi + pi') + beta^2`.
fn norm_linear(w: &WeilDatum, alpha: &Poly, beta: &Poly) -> Poly {
    alpha
        .square()
        .mul(&w.norm())
        .add(&alpha.mul(beta).mul(&w.t))
        .add(&beta.square())
}

/// `{ N(pi^(dn') - y^(n')) : pi in W(y) }`.
pub fn dprime_set(y: &PrimePoly, s: u32) -> Result<BTreeSet<Poly>> {
    let params = CongruenceParams::new(y.q(), s)?;
    let e = BigUint::from(params.d as u64) * params.n_prime;
    let yn = y.pow(params.n_prime);
    let mut out = BTreeSet::new();
    for w in enumerate_weil(y)? {
        let (alpha, beta) = x_power_mod_min_poly(&w, &e);
        out.insert(norm_linear(&w, &alpha, &beta.sub(&yn)));
    }
    Ok(out)
}

/// Monic prime divisors of the nonzero elements.
pub fn prime_set<'a>(values: impl IntoIterator<Item = &'a Poly>) -> Result<BTreeSet<PrimePoly>> {
    let mut out = BTreeSet::new();
    for v in values {
        if !v.is_zero() && !v.is_constant() {
            out.extend(crate::gfpoly::prime_divisors(v)?);
        }
    }
    Ok(out)
}

/// Membership of one prime in [`prime_set`], by divisibility only.
pub fn in_prime_set<'a>(p: &PrimePoly, values: impl IntoIterator<Item = &'a Poly>) -> bool {
    values.into_iter().any(|v| !v.is_zero() && v.is_divisible_by(p))
}

/// Which congruence set a route tests against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetVariant {
    /// `P(y, s)` from `D(y, s)`.
    Trace,
    /// `P'(y, s)` from `D'(y, s)`.
    Norm,
}

/// Result of a global-emptiness criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalOutcome {
    Obstructed,
    Inconclusive,
}

/// One hypothesis of a criterion and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bullet {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Bullet {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Bullet {
        Bullet {
            name: name.to_string(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteCheck {
    pub outcome: GlobalOutcome,
    pub bullets: Vec<Bullet>,
    /// For each `mu`, the ramified prime of `D` that splits in `F(sqrt(mu y))`.
    pub mu_splits: Vec<(u32, Option<String>)>,
}

/// `F(sqrt(mu y))` fails to split `D` iff some ramified prime splits in it.
fn mu_split_witnesses(dq: &QuaternionD, y: &PrimePoly) -> Result<Vec<(u32, Option<String>)>> {
    let mut out = Vec::new();
    for mu in 1..y.q() {
        let m = y.scale(mu);
        let mut witness = None;
        for v in dq.ram() {
            if split_type_of_radicand(&m, &Place::Finite(v.clone()))?.is_split() {
                witness = Some(v.to_string());
                break;
            }
        }
        out.push((mu, witness));
    }
    Ok(out)
}

fn check_route(p: &PrimePoly, qp: &PrimePoly, y: &PrimePoly, k: &QuadExt, variant: SetVariant) -> Result<RouteCheck> {
    let dq = QuaternionD::new(p.clone(), qp.clone())?;
    if y.q() != p.q() || k.field() != p.field() {
        return Err(Error::invalid("inputs over different fields"));
    }
    let mut bullets = Vec::new();
    let splits = quaternion_split_by(&dq, k)?;
    bullets.push(Bullet::new(
        "k_splits_d",
        splits,
        format!("no prime of Ram(D) splits in K: {splits}"),
    ));
    let y_type = k.split_type_finite(y)?;
    bullets.push(Bullet::new(
        "y_ramified_in_k",
        y_type == SplitType::Ramified,
        format!("{y} is {y_type} in K"),
    ));
    let y_unramified_in_d = !dq.is_ramified_at(y);
    bullets.push(Bullet::new(
        "y_not_in_ram_d",
        y_unramified_in_d,
        format!("{y} not in {{{p}, {qp}}}: {y_unramified_in_d}"),
    ));
    let s = p.degree() as u32;
    let (set_name, in_set) = match variant {
        SetVariant::Trace => ("P", in_prime_set(p, &d_set(y, s)?)),
        SetVariant::Norm => ("P'", in_prime_set(p, &dprime_set(y, s)?)),
    };
    bullets.push(Bullet::new(
        "p_not_in_prime_set",
        !in_set,
        format!("{p} in {set_name}({y}, {s}): {in_set}"),
    ));
    let mu_splits = mu_split_witnesses(&dq, y)?;
    let all_mu = mu_splits.iter().all(|(_, w)| w.is_some());
    let detail = mu_splits
        .iter()
        .map(|(mu, w)| match w {
            Some(v) => format!("mu={mu}: {v} splits"),
            None => format!("mu={mu}: F(sqrt({mu}*y)) splits D"),
        })
        .collect::<Vec<_>>()
        .join("; ");
    bullets.push(Bullet::new("no_mu_y_splits_d", all_mu, detail));
    let outcome = if bullets.iter().all(|b| b.holds) {
        GlobalOutcome::Obstructed
    } else {
        GlobalOutcome::Inconclusive
    };
    Ok(RouteCheck {
        outcome,
        bullets,
        mu_splits,
    })
}

/// The trace-set criterion: obstructed when `K` splits `D`, `y` ramifies in
/// `K`, `y` is not in `Ram(D)`, `p` avoids `P(y, deg p)` and no `F(sqrt(mu y))`
/// splits `D`.
pub fn check_main2(p: &PrimePoly, qp: &PrimePoly, y: &PrimePoly, k: &QuadExt) -> Result<RouteCheck> {
    check_route(p, qp, y, k, SetVariant::Trace)
}

/// The same criterion with `P'(y, deg p)` in place of `P(y, deg p)`.
pub fn check_main1(p: &PrimePoly, qp: &PrimePoly, y: &PrimePoly, k: &QuadExt) -> Result<RouteCheck> {
    check_route(p, qp, y, k, SetVariant::Norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::{fq, parse_poly, PrimeField};

    fn prime(q: u32, s: &str) -> PrimePoly {
        PrimePoly::new(parse_poly(PrimeField::new(q).unwrap(), s).unwrap()).unwrap()
    }

    #[test]
    fn weil_data_for_t() {
        let y = prime(3, "T");
        let w = enumerate_weil(&y).unwrap();
        assert_eq!(w.len(), 6);
        assert!(w.iter().all(|x| x.t.deg() <= 0));
    }

    #[test]
    fn params() {
        let p = CongruenceParams::new(3, 2).unwrap();
        assert_eq!((p.m, p.n_prime), (16, 160));
        assert_eq!(CongruenceParams::new(3, 3).unwrap().n_prime, 448);
        assert_eq!(CongruenceParams::new(5, 3).unwrap().m, 48);
    }

    #[test]
    fn small_power_sums() {
        let y = prime(5, "T^2+2");
        let w = WeilDatum {
            t: parse_poly(PrimeField::new(5).unwrap(), "T").unwrap(),
            mu: 2,
            y: y.clone(),
        };
        assert_eq!(power_sum(&w, 0).to_string(), "2");
        assert_eq!(power_sum(&w, 1), w.t);
        assert_eq!(power_sum(&w, 2), w.t.square().sub(&w.norm().scale(2)));
    }

    #[test]
    fn supersingular_dprime_closed_form() {
        let y = prime(3, "T");
        let params = CongruenceParams::new(3, 2).unwrap();
        for w in enumerate_weil(&y).unwrap().into_iter().filter(|w| w.t.is_zero()) {
            let e = BigUint::from(2 * params.n_prime);
            let (alpha, beta) = x_power_mod_min_poly(&w, &e);
            let yn = y.pow(params.n_prime);
            let got = norm_linear(&w, &alpha, &beta.sub(&yn));
            let mun = fq::pow(w.mu, params.n_prime, 3);
            let expected = yn.scale(fq::sub(mun, 1, 3)).square();
            assert_eq!(got, expected);
        }
    }
}
