//! Deciding whether `X^D` violates the Hasse principle over `K`.
//!
//! A violation needs `X^D(K)` empty, certified by one of the global routes,
//! and `X^D(K_v)` nonempty at every place `v`. When `K` does not split `D`
//! the curve has no `K`-points, but then it also fails to have points over
//! the completion at a ramified prime, so there is no violation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfpoly::{parse_poly, squarefree_monic_up_to, Poly, PrimeField, PrimePoly};
use crate::jacobian::{check_global_obstruction, ClassOutcome, GlobalClassCheck};
use crate::localpoints::{local_everywhere, LocalReport};
use crate::symbols::{quaternion_split_by, QuadExt, QuaternionD, SplitType};
use crate::weil::{check_main1, check_main2, Bullet, GlobalOutcome, RouteCheck};

pub const SCHEMA: &str = "hasse-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteName {
    GlobalClass,
    Main1,
    Main2,
    /// `main2`, then `main1`, then `global_class`, stopping at the first
    /// obstruction.
    Auto,
    /// `K` does not split `D`.
    NotSplit,
}

impl RouteName {
    pub fn parse(s: &str) -> Result<RouteName> {
        Ok(match s {
            "global_class" | "global-class" => RouteName::GlobalClass,
            "main1" => RouteName::Main1,
            "main2" => RouteName::Main2,
            "auto" => RouteName::Auto,
            _ => return Err(Error::invalid(format!("unknown route {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Violation,
    NoViolation,
    Undecided,
}

impl Verdict {
    /// Violation needs both parts; any local failure rules one out.
    pub fn compose(global: GlobalOutcome, local_all_nonempty: bool) -> Verdict {
        match (global, local_all_nonempty) {
            (_, false) => Verdict::NoViolation,
            (GlobalOutcome::Obstructed, true) => Verdict::Violation,
            (GlobalOutcome::Inconclusive, true) => Verdict::Undecided,
        }
    }
}

/// The input data, text-serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub q: u32,
    pub p: String,
    pub qp: String,
    pub d: String,
    pub route: RouteName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
}

/// Parsed and validated inputs.
#[derive(Clone, Debug)]
pub struct Problem {
    pub dq: QuaternionD,
    pub k: QuadExt,
    pub y: Option<PrimePoly>,
}

fn parse_prime(f: PrimeField, what: &str, s: &str) -> Result<PrimePoly> {
    PrimePoly::new(parse_poly(f, s)?).map_err(|e| Error::invalid(format!("{what} = {s}: {e}")))
}

impl Problem {
    pub fn new(q: u32, p: &str, qp: &str, d: &str, y: Option<&str>) -> Result<Problem> {
        let f = PrimeField::new(q)?;
        if !f.is_odd() {
            return Err(Error::Unsupported("q must be odd".into()));
        }
        let dq = QuaternionD::new(parse_prime(f, "p", p)?, parse_prime(f, "qq", qp)?)?;
        let k = QuadExt::new(parse_poly(f, d)?)?;
        let y = y.map(|s| parse_prime(f, "y", s)).transpose()?;
        Ok(Problem { dq, k, y })
    }

    pub fn from_inputs(i: &Inputs) -> Result<Problem> {
        Problem::new(i.q, &i.p, &i.qp, &i.d, i.y.as_deref())
    }

    pub fn inputs(&self, route: RouteName) -> Inputs {
        Inputs {
            q: self.dq.field().q(),
            p: self.dq.p().to_string(),
            qp: self.dq.q().to_string(),
            d: self.k.d().to_string(),
            route,
            y: self.y.as_ref().map(|y| y.to_string()),
        }
    }
}

/// One global criterion as applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalAttempt {
    pub route: RouteName,
    pub outcome: GlobalOutcome,
    pub bullets: Vec<Bullet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_check: Option<GlobalClassCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_splits: Option<Vec<(u32, Option<String>)>>,
    /// Why a route could not be applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GlobalAttempt {
    fn unmet(route: RouteName, note: impl Into<String>) -> GlobalAttempt {
        GlobalAttempt {
            route,
            outcome: GlobalOutcome::Inconclusive,
            bullets: Vec::new(),
            class_check: None,
            mu_splits: None,
            note: Some(note.into()),
        }
    }

    fn from_route(route: RouteName, r: RouteCheck) -> GlobalAttempt {
        GlobalAttempt {
            route,
            outcome: r.outcome,
            bullets: r.bullets,
            class_check: None,
            mu_splits: Some(r.mu_splits),
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalPart {
    pub k_splits_d: bool,
    pub outcome: GlobalOutcome,
    pub attempts: Vec<GlobalAttempt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseCertificate {
    pub schema: String,
    pub inputs: Inputs,
    pub global: GlobalPart,
    pub local: LocalReport,
    pub verdict: Verdict,
}

fn main_route(pb: &Problem, route: RouteName) -> Result<GlobalAttempt> {
    let Some(y) = &pb.y else {
        return Ok(GlobalAttempt::unmet(route, "this route needs the auxiliary prime y"));
    };
    let (p, qp) = (pb.dq.p(), pb.dq.q());
    let r = match route {
        RouteName::Main1 => check_main1(p, qp, y, &pb.k)?,
        _ => check_main2(p, qp, y, &pb.k)?,
    };
    Ok(GlobalAttempt::from_route(route, r))
}

/// The class-group obstruction, tried at each prime of `Ram(D)` inert in `K`.
fn class_route(pb: &Problem) -> Result<GlobalAttempt> {
    let route = RouteName::GlobalClass;
    if pb.k.infinity_type() != SplitType::Ramified {
        return Ok(GlobalAttempt::unmet(
            route,
            "class groups are implemented only for odd-degree d (infinity ramified in K)",
        ));
    }
    let mut last = None;
    for v in pb.dq.ram() {
        let t = pb.k.split_type_finite(v)?;
        let mut bullets = vec![Bullet {
            name: "v_inert_in_k".into(),
            holds: t == SplitType::Inert,
            detail: format!("{v} is {t} in K"),
        }];
        if t != SplitType::Inert {
            last = Some(GlobalAttempt {
                bullets,
                ..GlobalAttempt::unmet(route, "no prime of Ram(D) is inert in K")
            });
            continue;
        }
        let chk = match check_global_obstruction(&pb.k, v) {
            Ok(c) => c,
            Err(e @ (Error::Unsupported(_) | Error::BudgetExhausted(_))) => {
                last = Some(GlobalAttempt {
                    bullets,
                    ..GlobalAttempt::unmet(route, e.to_string())
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        bullets.push(Bullet {
            name: "no_surjection".into(),
            holds: !chk.can_surject,
            detail: format!(
                "Cl^(P inf) = {:?} onto Z({}) x Cl_K = {:?}: {}",
                chk.data.ray,
                chk.z_order,
                chk.target,
                if chk.can_surject { "possible" } else { "impossible" }
            ),
        });
        let outcome = match chk.outcome {
            ClassOutcome::Obstructed => GlobalOutcome::Obstructed,
            ClassOutcome::Inconclusive => GlobalOutcome::Inconclusive,
        };
        let attempt = GlobalAttempt {
            route,
            outcome,
            bullets,
            class_check: Some(chk),
            mu_splits: None,
            note: None,
        };
        if outcome == GlobalOutcome::Obstructed {
            return Ok(attempt);
        }
        last = Some(attempt);
    }
    Ok(last.expect("D has two ramified primes"))
}

/// Runs the requested global route. Unmet preconditions give an
/// inconclusive attempt with a note rather than an error.
pub fn global_part(pb: &Problem, route: RouteName) -> Result<GlobalPart> {
    let k_splits_d = quaternion_split_by(&pb.dq, &pb.k)?;
    if !k_splits_d {
        let split: Vec<String> = pb
            .dq
            .ram()
            .into_iter()
            .filter(|v| pb.k.split_type_finite(v).map(|t| t.is_split()).unwrap_or(false))
            .map(|v| v.to_string())
            .collect();
        return Ok(GlobalPart {
            k_splits_d,
            outcome: GlobalOutcome::Obstructed,
            attempts: vec![GlobalAttempt {
                route: RouteName::NotSplit,
                outcome: GlobalOutcome::Obstructed,
                bullets: vec![Bullet {
                    name: "k_does_not_split_d".into(),
                    holds: true,
                    detail: format!("{} splits in K", split.join(", ")),
                }],
                class_check: None,
                mu_splits: None,
                note: None,
            }],
        });
    }
    let order: &[RouteName] = match route {
        RouteName::Auto => &[RouteName::Main2, RouteName::Main1, RouteName::GlobalClass],
        RouteName::Main1 => &[RouteName::Main1],
        RouteName::Main2 => &[RouteName::Main2],
        RouteName::GlobalClass => &[RouteName::GlobalClass],
        RouteName::NotSplit => return Err(Error::invalid("not_split is not a selectable route")),
    };
    let mut attempts = Vec::new();
    for &r in order {
        let a = match r {
            RouteName::GlobalClass => class_route(pb)?,
            _ => main_route(pb, r)?,
        };
        let done = a.outcome == GlobalOutcome::Obstructed;
        attempts.push(a);
        if done {
            break;
        }
    }
    let outcome = attempts
        .last()
        .map(|a| a.outcome)
        .unwrap_or(GlobalOutcome::Inconclusive);
    Ok(GlobalPart {
        k_splits_d,
        outcome,
        attempts,
    })
}

pub fn check_violation(pb: &Problem, route: RouteName) -> Result<HasseCertificate> {
    let global = global_part(pb, route)?;
    let local = local_everywhere(&pb.dq, &pb.k)?;
    let verdict = Verdict::compose(global.outcome, local.all_nonempty);
    Ok(HasseCertificate {
        schema: SCHEMA.to_string(),
        inputs: pb.inputs(route),
        global,
        local,
        verdict,
    })
}

/// Parameters of a sweep over `d = c T p qp m`.
#[derive(Clone, Debug)]
pub struct SearchParams {
    pub q: u32,
    pub p: String,
    pub qp: String,
    pub y: Option<String>,
    pub route: RouteName,
    pub m_degree_max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub m: String,
    pub c: u32,
    pub certificate: HasseCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub candidates: u64,
    pub hits: Vec<SearchHit>,
    pub rejects: BTreeMap<String, u64>,
}

impl SearchResult {
    /// The distinct `m` with at least one violation, in search order.
    pub fn m_list(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for h in &self.hits {
            if out.last() != Some(&h.m) {
                out.push(h.m.clone());
            }
        }
        out
    }
}

/// The radicands `c T p qp m` for one `m`: `c` runs over the square classes
/// `{1, nu}` of `F_q^*` (`nu` the least non-square), keeping those where
/// infinity does not split.
pub fn family_radicands(t_p_qp: &Poly, m: &Poly) -> Vec<(u32, Poly)> {
    let f = m.field();
    let nu = f.non_square().expect("odd q has non-squares").value();
    let base = t_p_qp.mul(m);
    [1, nu]
        .into_iter()
        .map(|c| (c, base.scale(c)))
        .filter(|(_, d)| !crate::symbols::infinity_type_of(d).is_split())
        .collect()
}

/// Sweeps monic square-free `m` coprime to `T p qp` with `deg m <= m_degree_max`
/// in canonical order, emitting only violations.
pub fn search_m(sp: &SearchParams) -> Result<SearchResult> {
    let f = PrimeField::new(sp.q)?;
    let p = parse_prime(f, "p", &sp.p)?;
    let qp = parse_prime(f, "qq", &sp.qp)?;
    let t = Poly::t(f);
    let tpq = t.mul(&p).mul(&qp);
    let mut res = SearchResult {
        candidates: 0,
        hits: Vec::new(),
        rejects: BTreeMap::new(),
    };
    let reject = |r: &mut SearchResult, why: &str| *r.rejects.entry(why.to_string()).or_insert(0) += 1;
    for m in squarefree_monic_up_to(f, sp.m_degree_max) {
        if !m.gcd(&tpq).is_one() {
            continue;
        }
        for (c, d) in family_radicands(&tpq, &m) {
            res.candidates += 1;
            let pb = Problem::new(sp.q, &sp.p, &sp.qp, &d.to_string(), sp.y.as_deref())?;
            let global = global_part(&pb, sp.route)?;
            if !global.k_splits_d {
                reject(&mut res, "k_does_not_split_d");
                continue;
            }
            if global.outcome != GlobalOutcome::Obstructed {
                reject(&mut res, "global_inconclusive");
                continue;
            }
            let local = local_everywhere(&pb.dq, &pb.k)?;
            if !local.all_nonempty {
                reject(&mut res, "local_failure");
                continue;
            }
            let certificate = HasseCertificate {
                schema: SCHEMA.to_string(),
                inputs: pb.inputs(sp.route),
                global,
                verdict: Verdict::compose(GlobalOutcome::Obstructed, true),
                local,
            };
            res.hits.push(SearchHit {
                m: m.to_string(),
                c,
                certificate,
            });
        }
    }
    Ok(res)
}

/// The `m` for which every place of `K` has a local point, ignoring the
/// global part. Same family and order as [`search_m`].
pub fn locally_solvable_m(q: u32, p: &str, qp: &str, m_degree_max: i64) -> Result<Vec<(String, u32)>> {
    let f = PrimeField::new(q)?;
    let pp = parse_prime(f, "p", p)?;
    let qq = parse_prime(f, "qq", qp)?;
    let tpq = Poly::t(f).mul(&pp).mul(&qq);
    let dq = QuaternionD::new(pp, qq)?;
    let mut out = Vec::new();
    for m in squarefree_monic_up_to(f, m_degree_max) {
        if !m.gcd(&tpq).is_one() {
            continue;
        }
        for (c, d) in family_radicands(&tpq, &m) {
            if local_everywhere(&dq, &QuadExt::new(d)?)?.all_nonempty {
                out.push((m.to_string(), c));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_table() {
        assert_eq!(Verdict::compose(GlobalOutcome::Obstructed, true), Verdict::Violation);
        assert_eq!(Verdict::compose(GlobalOutcome::Obstructed, false), Verdict::NoViolation);
        assert_eq!(Verdict::compose(GlobalOutcome::Inconclusive, true), Verdict::Undecided);
        assert_eq!(
            Verdict::compose(GlobalOutcome::Inconclusive, false),
            Verdict::NoViolation
        );
    }

    fn product(q: u32, parts: &[&str]) -> String {
        let f = PrimeField::new(q).unwrap();
        parts
            .iter()
            .fold(Poly::one(f), |acc, s| acc.mul(&parse_poly(f, s).unwrap()))
            .to_string()
    }

    #[test]
    fn cubic_p_has_no_violation() {
        let d = product(3, &["2*T", "T^3+T^2+2", "T^2+1"]);
        let pb = Problem::new(3, "T^3+T^2+2", "T^2+1", &d, Some("T")).unwrap();
        let c = check_violation(&pb, RouteName::Main2).unwrap();
        assert_eq!(c.verdict, Verdict::NoViolation);
        // the failure at T^2+1 alone rules out a violation
        let fail = c.local.failures();
        assert_eq!(fail[0].place, "T^2+1");
        assert!(matches!(
            fail[0].witness,
            Some(crate::localpoints::Witness::MuSplits { .. })
        ));
    }

    #[test]
    fn not_split_reports_local_failure() {
        // T+1 splits in F(sqrt(T^3+T)) since 2^3+2 = 1 is a square mod 3
        let pb = Problem::new(3, "T+1", "T+2", "T^3+T", None).unwrap();
        assert!(!quaternion_split_by(&pb.dq, &pb.k).unwrap());
        let c = check_violation(&pb, RouteName::Auto).unwrap();
        assert_eq!(c.global.attempts[0].route, RouteName::NotSplit);
        assert_eq!(c.global.outcome, GlobalOutcome::Obstructed);
        assert_eq!(c.verdict, Verdict::NoViolation);
        assert_eq!(c.local.failures()[0].place, "T+1");
    }

    #[test]
    fn missing_y_is_undecided_not_error() {
        let d = product(3, &["T", "T^2+T+2", "T^2+1"]);
        let pb = Problem::new(3, "T^2+T+2", "T^2+1", &d, None).unwrap();
        let g = global_part(&pb, RouteName::Main2).unwrap();
        assert_eq!(g.outcome, GlobalOutcome::Inconclusive);
        assert!(g.attempts[0].note.is_some());
    }

    #[test]
    fn empty_sweep() {
        let sp = SearchParams {
            q: 3,
            p: "T^2+T+2".into(),
            qp: "T^2+1".into(),
            y: Some("T".into()),
            route: RouteName::Main2,
            m_degree_max: -1,
        };
        let r = search_m(&sp).unwrap();
        assert_eq!(r.candidates, 0);
        assert!(r.hits.is_empty());
    }
}
