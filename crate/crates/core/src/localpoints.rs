//! Local solvability of `X^D` over the completions of `K`.
//!
//! `D` is the quaternion algebra over `F` ramified exactly at `p` and `qp`.
//! At `inf` and at `p`, `qp` the answer depends only on how these places
//! behave in `K` and in a few twists `F(sqrt(mu v))`. At a place `l` of good
//! reduction that is not inert in `K`, a point exists iff some field
//! `F(sqrt(a^2 + c l))` is nontrivial and none of `p`, `qp`, `inf` splits in
//! it. Once `deg l` is large the Weil bound alone provides a point.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfpoly::{is_square_in_a, parse_poly, polys_up_to_degree, Poly, PrimePoly, PrimesOfDegree};
use crate::symbols::{
    infinity_type_of, quaternion_split_by, split_type_of_radicand, Place, QuadExt, QuaternionD, SplitType,
};

/// `g(X^D) = 1 + (|p|-1)(|qp|-1)/(q^2-1)`, less `2q/(q+1)` when both
/// degrees are odd.
pub fn genus_from_degrees(q: u32, dp: usize, dq: usize) -> Result<u64> {
    let qb = BigInt::from(q);
    let den: BigInt = &qb * &qb - 1;
    let mut num: BigInt = (qb.pow(dp as u32) - 1) * (qb.pow(dq as u32) - 1);
    if dp % 2 == 1 && dq % 2 == 1 {
        // 2q/(q+1) = 2q(q-1)/(q^2-1)
        num -= 2 * &qb * (&qb - 1);
    }
    if !(&num % &den).is_zero() {
        return Err(Error::consistency(format!(
            "genus of X^D is not an integer for q = {q}, degrees {dp} and {dq}"
        )));
    }
    let g: BigInt = num / den + 1;
    g.to_u64()
        .ok_or_else(|| Error::Unsupported("genus of X^D exceeds u64".into()))
}

pub fn genus_xd(p: &PrimePoly, qp: &PrimePoly) -> Result<u64> {
    if p == qp {
        return Err(Error::invalid("the two ramified primes must be distinct"));
    }
    genus_from_degrees(p.q(), p.degree(), qp.degree())
}

/// Exact test of `q^n + 1 - 2 g q^(n/2) > 0`.
pub fn weil_bound_positive(q: u32, n: u32, g: u64) -> bool {
    let x = BigUint::from(q).pow(n);
    let g = BigUint::from(g);
    if n.is_multiple_of(2) {
        &x + 1u32 > BigUint::from(2u32) * g * BigUint::from(q).pow(n / 2)
    } else {
        let lhs = (&x + 1u32) * (&x + 1u32);
        lhs > BigUint::from(4u32) * &g * &g * x
    }
}

/// Least `n` from which the Weil bound guarantees an `F_l`-point for every
/// `deg l >= n`. The bound is increasing in `n` once positive.
pub fn weil_degree(q: u32, g: u64) -> u32 {
    (1..)
        .find(|&n| weil_bound_positive(q, n, g))
        .expect("the bound eventually holds")
}

/// The degree `2(deg p + deg qp)` from which good places need no search,
/// checked against the exact bound.
pub fn cutoff_degree(dq: &QuaternionD) -> Result<u32> {
    let g = genus_xd(dq.p(), dq.q())?;
    let n = 2 * (dq.p().degree() + dq.q().degree()) as u32;
    if !weil_bound_positive(dq.field().q(), n, g) {
        return Err(Error::consistency(format!(
            "Weil bound is not positive at the cutoff degree {n}"
        )));
    }
    Ok(n)
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `inf` is ramified or inert in `K`.
    InfinityNonSplit,
    /// `inf` splits in `K`: a point exists iff both degrees are odd.
    InfinitySplit,
    /// The place is inert in `K`.
    ResidueDegreeTwo,
    /// Ramified in `D` and in `K`: decided by the twists `F(sqrt(mu v))`.
    MuTwist,
    /// A ramified prime of `D` splits in `K`.
    SplitRamified,
    /// Good reduction, decided by the `(a, c)` search.
    Search,
    /// Good reduction at or above the Weil cutoff.
    Cutoff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    /// `F(sqrt(a^2 + c l))` in which none of `p`, `qp`, `inf` splits.
    Field {
        a: String,
        c: u32,
    },
    /// `F(sqrt(mu v))` in which neither the other prime nor `inf` splits.
    Mu {
        mu: u32,
    },
    /// For every `mu`, a place among the other prime and `inf` that splits
    /// in `F(sqrt(mu v))`.
    MuSplits {
        mu_splits: Vec<(u32, String)>,
    },
    Cutoff {
        cutoff: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVerdict {
    pub place: String,
    pub k_split: SplitType,
    pub nonempty: bool,
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Compact verdict for a searched good place: `[l, k_split, (a, c)]`, with
/// the pair absent when no field works.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodEntry(pub String, pub SplitType, pub Option<(String, u32)>);

impl GoodEntry {
    pub fn nonempty(&self) -> bool {
        self.2.is_some()
    }

    pub fn verdict(&self) -> LocalVerdict {
        LocalVerdict {
            place: self.0.clone(),
            k_split: self.1,
            nonempty: self.nonempty(),
            rule: Rule::Search,
            witness: self.2.as_ref().map(|(a, c)| Witness::Field { a: a.clone(), c: *c }),
        }
    }
}

/// Verdicts at all places of `K`. Inert good places and places at or above
/// the cutoff are nonempty by rule and only counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub genus: u64,
    pub cutoff: u32,
    /// The exact Weil degree, for reference; the cutoff never goes below it.
    pub weil_degree: u32,
    pub infinity: Vec<LocalVerdict>,
    pub ramified: Vec<LocalVerdict>,
    pub good: Vec<GoodEntry>,
    pub inert_below_cutoff: u64,
    pub all_nonempty: bool,
}

impl LocalReport {
    /// Every recorded verdict, in order: infinity, ramified, good.
    pub fn verdicts(&self) -> impl Iterator<Item = LocalVerdict> + '_ {
        self.infinity
            .iter()
            .chain(&self.ramified)
            .cloned()
            .chain(self.good.iter().map(GoodEntry::verdict))
    }

    pub fn failures(&self) -> Vec<LocalVerdict> {
        self.verdicts().filter(|v| !v.nonempty).collect()
    }
}

fn verdict(place: String, k_split: SplitType, nonempty: bool, rule: Rule, witness: Option<Witness>) -> LocalVerdict {
    LocalVerdict {
        place,
        k_split,
        nonempty,
        rule,
        witness,
    }
}

/// One verdict per place of `K` over `inf`.
pub fn local_at_infinity(dq: &QuaternionD, k: &QuadExt) -> Vec<LocalVerdict> {
    let t = k.infinity_type();
    if !t.is_split() {
        return vec![verdict("inf".into(), t, true, Rule::InfinityNonSplit, None)];
    }
    let odd = dq.p().degree() % 2 == 1 && dq.q().degree() % 2 == 1;
    vec![verdict("inf".into(), t, odd, Rule::InfinitySplit, None); 2]
}

pub fn local_at_ramified(dq: &QuaternionD, k: &QuadExt, v: &PrimePoly) -> Result<LocalVerdict> {
    let other = dq
        .other(v)
        .ok_or_else(|| Error::invalid(format!("{v} is not a ramified prime of D")))?;
    let t = k.split_type_finite(v)?;
    Ok(match t {
        SplitType::Inert => verdict(v.to_string(), t, true, Rule::ResidueDegreeTwo, None),
        SplitType::Split => verdict(v.to_string(), t, false, Rule::SplitRamified, None),
        SplitType::Ramified => {
            let other_place = Place::Finite(other.clone());
            let mut mu_splits = Vec::new();
            for mu in dq.field().units() {
                let m = v.scale(mu.value());
                if split_type_of_radicand(&m, &other_place)?.is_split() {
                    mu_splits.push((mu.value(), other.to_string()));
                } else if infinity_type_of(&m).is_split() {
                    mu_splits.push((mu.value(), "inf".to_string()));
                } else {
                    return Ok(verdict(
                        v.to_string(),
                        t,
                        true,
                        Rule::MuTwist,
                        Some(Witness::Mu { mu: mu.value() }),
                    ));
                }
            }
            verdict(
                v.to_string(),
                t,
                false,
                Rule::MuTwist,
                Some(Witness::MuSplits { mu_splits }),
            )
        }
    })
}

/// Whether `F(sqrt(m))` is a nontrivial extension in which none of `p`, `qp`,
/// `inf` splits.
fn avoids_splitting(ram: &[Place; 2], m: &Poly) -> Result<bool> {
    if m.is_zero() || infinity_type_of(m).is_split() {
        return Ok(false);
    }
    for v in ram {
        if split_type_of_radicand(m, v)?.is_split() {
            return Ok(false);
        }
    }
    Ok(!is_square_in_a(m))
}

fn ram_places(dq: &QuaternionD) -> [Place; 2] {
    [Place::Finite(dq.p().clone()), Place::Finite(dq.q().clone())]
}

fn search(ram: &[Place; 2], l: &PrimePoly) -> Result<Option<(Poly, u32)>> {
    let f = l.field();
    // a of larger degree makes inf split
    for a in polys_up_to_degree(f, (l.degree() / 2) as i64) {
        let a2 = a.square();
        for c in 1..f.q() {
            if avoids_splitting(ram, &a2.add(&l.scale(c)))? {
                return Ok(Some((a, c)));
            }
        }
    }
    Ok(None)
}

/// First `(a, c)` in canonical order with `F(sqrt(a^2 + c l))` a witness,
/// searching all `a` with `deg a <= deg(l)/2`.
pub fn good_witness(dq: &QuaternionD, l: &PrimePoly) -> Result<Option<(Poly, u32)>> {
    search(&ram_places(dq), l)
}

pub fn local_at_good(dq: &QuaternionD, k: &QuadExt, l: &PrimePoly) -> Result<LocalVerdict> {
    if dq.is_ramified_at(l) {
        return Err(Error::invalid(format!("{l} is ramified in D")));
    }
    let t = k.split_type_finite(l)?;
    if t == SplitType::Inert {
        return Ok(verdict(l.to_string(), t, true, Rule::ResidueDegreeTwo, None));
    }
    let cutoff = cutoff_degree(dq)?;
    if l.degree() as u32 >= cutoff {
        return Ok(verdict(
            l.to_string(),
            t,
            true,
            Rule::Cutoff,
            Some(Witness::Cutoff { cutoff }),
        ));
    }
    Ok(match good_witness(dq, l)? {
        Some((a, c)) => verdict(
            l.to_string(),
            t,
            true,
            Rule::Search,
            Some(Witness::Field { a: a.to_string(), c }),
        ),
        None => verdict(l.to_string(), t, false, Rule::Search, None),
    })
}

fn ramified_verdicts(dq: &QuaternionD, k: &QuadExt) -> Result<Vec<LocalVerdict>> {
    let ramified = dq
        .ram()
        .into_iter()
        .map(|v| local_at_ramified(dq, k, v))
        .collect::<Result<Vec<_>>>()?;
    if quaternion_split_by(dq, k)? && ramified.iter().any(|v| v.rule == Rule::SplitRamified) {
        return Err(Error::consistency("K splits D but a ramified prime of D splits in K"));
    }
    Ok(ramified)
}

pub fn local_everywhere(dq: &QuaternionD, k: &QuadExt) -> Result<LocalReport> {
    if dq.field() != k.field() {
        return Err(Error::invalid("D and K are over different fields"));
    }
    let genus = genus_xd(dq.p(), dq.q())?;
    let cutoff = cutoff_degree(dq)?;
    let infinity = local_at_infinity(dq, k);
    let ramified = ramified_verdicts(dq, k)?;
    let ram = ram_places(dq);
    let mut good = Vec::new();
    let mut inert_below_cutoff = 0;
    for n in 1..cutoff as usize {
        for l in PrimesOfDegree::new(dq.field(), n) {
            if dq.is_ramified_at(&l) {
                continue;
            }
            let t = k.split_type_finite(&l)?;
            if t == SplitType::Inert {
                inert_below_cutoff += 1;
                continue;
            }
            let w = search(&ram, &l)?;
            good.push(GoodEntry(l.to_string(), t, w.map(|(a, c)| (a.to_string(), c))));
        }
    }
    let all_nonempty = infinity.iter().chain(&ramified).all(|v| v.nonempty) && good.iter().all(GoodEntry::nonempty);
    Ok(LocalReport {
        genus,
        cutoff,
        weil_degree: weil_degree(dq.field().q(), genus),
        infinity,
        ramified,
        good,
        inert_below_cutoff,
        all_nonempty,
    })
}

/// Rechecks a report without trusting it: the place list is rebuilt, each
/// `(a, c)` witness is tested directly and only witness-free entries are
/// searched again.
pub fn verify_report(dq: &QuaternionD, k: &QuadExt, r: &LocalReport) -> Result<()> {
    let bad = |what: String| Err(Error::consistency(format!("local report: {what}")));
    if r.genus != genus_xd(dq.p(), dq.q())? || r.cutoff != cutoff_degree(dq)? {
        return bad("genus or cutoff differs".into());
    }
    if r.weil_degree != weil_degree(dq.field().q(), r.genus) || r.weil_degree > r.cutoff {
        return bad("Weil degree differs".into());
    }
    if r.infinity != local_at_infinity(dq, k) || r.ramified != ramified_verdicts(dq, k)? {
        return bad("verdicts at infinity or at the ramified primes differ".into());
    }
    let ram = ram_places(dq);
    let f = dq.field();
    let mut entries = r.good.iter();
    let mut inert = 0;
    for n in 1..r.cutoff as usize {
        for l in PrimesOfDegree::new(f, n) {
            if dq.is_ramified_at(&l) {
                continue;
            }
            let t = k.split_type_finite(&l)?;
            if t == SplitType::Inert {
                inert += 1;
                continue;
            }
            let Some(e) = entries.next() else {
                return bad(format!("missing place {l}"));
            };
            if e.0 != l.to_string() || e.1 != t {
                return bad(format!("expected {l} ({t}), found {} ({})", e.0, e.1));
            }
            match &e.2 {
                Some((a, c)) => {
                    let a = parse_poly(f, a)?;
                    if a.deg() > (l.degree() / 2) as i64 || *c == 0 || *c >= f.q() {
                        return bad(format!("witness out of range at {l}"));
                    }
                    if !avoids_splitting(&ram, &a.square().add(&l.scale(*c)))? {
                        return bad(format!("witness at {l} does not hold"));
                    }
                }
                None => {
                    if search(&ram, &l)?.is_some() {
                        return bad(format!("{l} has a witness but was reported empty"));
                    }
                }
            }
        }
    }
    if entries.next().is_some() || inert != r.inert_below_cutoff {
        return bad("place list does not match".into());
    }
    let all = r.infinity.iter().chain(&r.ramified).all(|v| v.nonempty) && r.good.iter().all(GoodEntry::nonempty);
    if all != r.all_nonempty {
        return bad("summary does not match the verdicts".into());
    }
    Ok(())
}
