//! JSON certificates and their offline verification.
//!
//! Verification recomputes the global route from the recorded inputs,
//! rechecks every local witness, and recomposes the verdict. Nothing recorded
//! in the certificate beyond the inputs is trusted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hasse::{global_part, HasseCertificate, Problem, Verdict, SCHEMA};
use crate::localpoints::verify_report;

pub fn to_json(c: &HasseCertificate) -> Result<String> {
    serde_json::to_string_pretty(c).map_err(|e| Error::consistency(format!("serializing certificate: {e}")))
}

pub fn from_json(s: &str) -> Result<HasseCertificate> {
    let c: HasseCertificate = serde_json::from_str(s).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    if c.schema != SCHEMA {
        return Err(Error::invalid(format!(
            "unsupported schema {:?}, expected {SCHEMA:?}",
            c.schema
        )));
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub verdict: Verdict,
    pub problems: Vec<String>,
}

pub fn verify(c: &HasseCertificate) -> Result<VerifyReport> {
    let mut problems = Vec::new();
    if c.schema != SCHEMA {
        problems.push(format!("schema {:?} is not {SCHEMA:?}", c.schema));
    }
    let pb = Problem::from_inputs(&c.inputs)?;
    let global = global_part(&pb, c.inputs.route)?;
    if global != c.global {
        problems.push("global part does not match a recomputation".into());
    }
    if let Err(e) = verify_report(&pb.dq, &pb.k, &c.local) {
        problems.push(e.to_string());
    }
    let verdict = Verdict::compose(global.outcome, c.local.all_nonempty);
    if verdict != c.verdict {
        problems.push(format!(
            "recorded verdict {:?} but the parts give {verdict:?}",
            c.verdict
        ));
    }
    if c.verdict == Verdict::Violation && !c.global.k_splits_d {
        problems.push("violation recorded although K does not split D".into());
    }
    Ok(VerifyReport {
        ok: problems.is_empty(),
        verdict,
        problems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::{parse_poly, Poly, PrimeField};
    use crate::hasse::{check_violation, RouteName};

    fn d(q: u32, parts: &[&str]) -> String {
        let f = PrimeField::new(q).unwrap();
        parts
            .iter()
            .fold(Poly::one(f), |acc, s| acc.mul(&parse_poly(f, s).unwrap()))
            .to_string()
    }

    #[test]
    fn round_trip_and_tamper() {
        let pb = Problem::new(
            3,
            "T^3+T^2+2",
            "T^2+1",
            &d(3, &["2*T", "T^3+T^2+2", "T^2+1"]),
            Some("T"),
        )
        .unwrap();
        let c = check_violation(&pb, RouteName::Main2).unwrap();
        let text = to_json(&c).unwrap();
        let back = from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_json(&back).unwrap(), text);
        let r = verify(&back).unwrap();
        assert!(r.ok, "{:?}", r.problems);
        let mut forged = back.clone();
        forged.verdict = Verdict::Violation;
        assert!(!verify(&forged).unwrap().ok);
        let mut forged = back;
        forged.global.attempts[0].bullets[0].holds ^= true;
        assert!(!verify(&forged).unwrap().ok);
        assert!(from_json(&text.replace(SCHEMA, "hasse-certificate/0")).is_err());
    }
}
