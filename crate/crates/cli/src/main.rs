use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hasse_core::certificate::{from_json, to_json, verify};
use hasse_core::gfpoly::{parse_poly, PrimeField, PrimePoly, PrimesOfDegree};
use hasse_core::hasse::{check_violation, search_m, Problem, RouteName, SearchParams};
use hasse_core::jacobian::{check_global_obstruction, HyperCurve};
use hasse_core::localpoints::local_everywhere;
use hasse_core::rng;
use hasse_core::symbols::QuadExt;
use hasse_core::weil::{d_set, dprime_set, enumerate_weil, in_prime_set};
use hasse_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hasse",
    version,
    about = "Hasse principle certificates for Drinfeld-Stuhler curves over quadratic function fields"
)]
struct Cli {
    /// Seed for the randomized subroutines; results do not depend on it.
    #[arg(long, env = "HASSE_SEED", global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Quaternion {
    #[arg(long)]
    q: u32,
    /// First ramified prime of D.
    #[arg(long)]
    p: String,
    /// Second ramified prime of D.
    #[arg(long)]
    qq: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether X^D violates the Hasse principle over F(sqrt(d)).
    Violate {
        #[command(flatten)]
        dq: Quaternion,
        #[arg(long)]
        d: String,
        /// main1, main2, global_class or auto.
        #[arg(long, default_value = "auto")]
        route: String,
        /// Auxiliary prime for main1 and main2.
        #[arg(long)]
        y: Option<String>,
        /// Write the full certificate here.
        #[arg(long)]
        json: Option<String>,
    },
    /// Sweep d = c T p qq m over square-free m.
    Search {
        #[command(flatten)]
        dq: Quaternion,
        #[arg(long)]
        y: Option<String>,
        #[arg(long, default_value = "main2")]
        route: String,
        #[arg(long, allow_negative_numbers = true)]
        max_deg_m: i64,
        /// Write every violation certificate here.
        #[arg(long)]
        json: Option<String>,
    },
    /// L-polynomial and divisor class group of y^2 = d(x).
    Classgroup {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: String,
    },
    /// Ray class group of modulus p*inf and the class-group obstruction.
    Rayclass {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: String,
        #[arg(long)]
        p: String,
    },
    /// Primes of degree s in the congruence set of y.
    Pset {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        y: String,
        #[arg(long)]
        s: u32,
        /// Use the norm variant instead of the trace variant.
        #[arg(long)]
        prime_variant: bool,
    },
    /// Weil data of y.
    Wset {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        y: String,
    },
    /// Local solvability at every place of F(sqrt(d)).
    Local {
        #[command(flatten)]
        dq: Quaternion,
        #[arg(long)]
        d: String,
        /// Only print places without local points.
        #[arg(long)]
        failures_only: bool,
    },
    /// Re-verify a certificate from its inputs.
    Verify { file: String },
}

fn prime(f: PrimeField, s: &str) -> Result<PrimePoly> {
    PrimePoly::new(parse_poly(f, s)?)
}

fn write_file(path: &str, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::invalid(format!("cannot write {path}: {e}")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn l_coeffs(c: &HyperCurve) -> Result<Vec<Value>> {
    Ok(c.l_polynomial()?
        .coeffs()
        .iter()
        .map(|x| match i64::try_from(x) {
            Ok(v) => json!(v),
            Err(_) => json!(x.to_string()),
        })
        .collect())
}

/// Runs one command; the second value is true when a verification failed.
fn run(cmd: Cmd) -> Result<(Value, bool)> {
    Ok((
        match cmd {
            Cmd::Violate { dq, d, route, y, json } => {
                let pb = Problem::new(dq.q, &dq.p, &dq.qq, &d, y.as_deref())?;
                let cert = check_violation(&pb, RouteName::parse(&route)?)?;
                if let Some(path) = json {
                    write_file(&path, &to_json(&cert)?)?;
                }
                json!({
                    "verdict": cert.verdict,
                    "k_splits_d": cert.global.k_splits_d,
                    "global": cert.global.attempts.iter().map(|a| json!({
                        "route": a.route,
                        "outcome": a.outcome,
                        "bullets": a.bullets,
                        "note": a.note,
                    })).collect::<Vec<_>>(),
                    "local": {
                        "genus": cert.local.genus,
                        "cutoff": cert.local.cutoff,
                        "weil_degree": cert.local.weil_degree,
                        "searched_places": cert.local.good.len(),
                        "all_nonempty": cert.local.all_nonempty,
                        "failures": cert.local.failures(),
                    },
                })
            }
            Cmd::Search {
                dq,
                y,
                route,
                max_deg_m,
                json,
            } => {
                let sp = SearchParams {
                    q: dq.q,
                    p: dq.p,
                    qp: dq.qq,
                    y,
                    route: RouteName::parse(&route)?,
                    m_degree_max: max_deg_m,
                };
                let r = search_m(&sp)?;
                if let Some(path) = json {
                    let certs: Vec<_> = r.hits.iter().map(|h| &h.certificate).collect();
                    write_file(&path, &serde_json::to_string_pretty(&certs).expect("serializable"))?;
                }
                json!({
                    "candidates": r.candidates,
                    "m": r.m_list(),
                    "hits": r.hits.iter().map(|h| json!({"m": h.m, "c": h.c, "d": h.certificate.inputs.d})).collect::<Vec<_>>(),
                    "rejects": r.rejects,
                })
            }
            Cmd::Classgroup { q, d } => {
                let k = QuadExt::new(parse_poly(PrimeField::new(q)?, &d)?)?;
                let c = HyperCurve::from_ext(&k)?;
                let pic = c.group_structure()?;
                json!({
                    "L": l_coeffs(&c)?,
                    "h": pic.h,
                    "pic0_invariants": pic.structure.invariants,
                })
            }
            Cmd::Rayclass { q, d, p } => {
                let f = PrimeField::new(q)?;
                let k = QuadExt::new(parse_poly(f, &d)?)?;
                let chk = check_global_obstruction(&k, &prime(f, &p)?)?;
                json!({
                    "L": l_coeffs(&HyperCurve::from_ext(&k)?)?,
                    "h": chk.data.h,
                    "pic0_invariants": chk.data.pic0.invariants,
                    "ray_invariants": chk.data.ray.invariants,
                    "kernel_order": chk.data.kernel_order,
                    "z_order": chk.z_order,
                    "can_surject": chk.can_surject,
                    "outcome": chk.outcome,
                })
            }
            Cmd::Pset { q, y, s, prime_variant } => {
                let f = PrimeField::new(q)?;
                let y = prime(f, &y)?;
                let values = if prime_variant {
                    dprime_set(&y, s)?
                } else {
                    d_set(&y, s)?
                };
                let primes: Vec<String> = PrimesOfDegree::new(f, s as usize)
                    .filter(|p| in_prime_set(p, &values))
                    .map(|p| p.to_string())
                    .collect();
                json!({
                    "y": y.to_string(),
                    "s": s,
                    "variant": if prime_variant { "norm" } else { "trace" },
                    "primes": primes,
                })
            }
            Cmd::Wset { q, y } => {
                let y = prime(PrimeField::new(q)?, &y)?;
                let w: Vec<Value> = enumerate_weil(&y)?
                    .iter()
                    .map(|w| json!({"t": w.t.to_string(), "mu": w.mu}))
                    .collect();
                Value::Array(w)
            }
            Cmd::Local { dq, d, failures_only } => {
                let pb = Problem::new(dq.q, &dq.p, &dq.qq, &d, None)?;
                let r = local_everywhere(&pb.dq, &pb.k)?;
                let vs: Vec<Value> = r
                    .verdicts()
                    .filter(|v| !failures_only || !v.nonempty)
                    .map(|v| to_value(&v))
                    .collect();
                Value::Array(vs)
            }
            Cmd::Verify { file } => {
                let text = fs::read_to_string(&file).map_err(|e| Error::invalid(format!("cannot read {file}: {e}")))?;
                let report = verify(&from_json(&text)?)?;
                let failed = !report.ok;
                return Ok((to_value(&report), failed));
            }
        },
        false,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(s) = cli.seed {
        rng::set_global_seed(s);
    }
    match run(cli.cmd) {
        Ok((v, failed)) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(
                std::io::stdout(),
                "{}",
                serde_json::to_string_pretty(&v).expect("serializable")
            );
            if failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
