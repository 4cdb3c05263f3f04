//! The ray class group of modulus `P * inf` and the class-group obstruction.
//!
//! With infinity ramified, the degree-zero ray classes form an extension
//! `1 -> F_P^* -> Cl^0 -> Pic^0 -> 1`. A kernel element `z` maps to the class
//! of any `div(g)` with `g = z mod P` and `g(inf) = 1`; hence a principal
//! divisor `div(f)` is the image of `f(P) / f(inf)`. The group is presented on
//! a kernel generator `k` and lifts `E_j` of the `Pic^0` generators: the kernel
//! relation `(|P| - 1) k = 0`, and for every `Pic^0` relation `sum c_j g_j = 0`
//! the relation `sum c_j E_j = dlog(f(P) / f(inf)) k`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::curve::HyperCurve;
use super::group::{can_surject, presentation, AbGroupStruct};
use super::miller::InertPlace;
use super::pic::{Formal, Pic0};
use crate::arith::{factor_u64, isqrt_ceil};
use crate::error::{Error, Result};
use crate::gfpoly::{PrimePoly, QuadElem, QuadOver};
use crate::rng;
use crate::symbols::{QuadExt, SplitType};

const PRIMITIVE_STREAM: u64 = 0x5052_494d;

/// Largest prime factor of `|P| - 1` handled by baby-step giant-step.
const DLOG_LIMIT: u64 = 1 << 44;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayClassData {
    pub h: u64,
    pub pic0: AbGroupStruct,
    pub kernel_order: u64,
    /// Full structure, free rank 1 from the degree.
    pub ray: AbGroupStruct,
}

fn unit_group_factors(res: &QuadOver) -> Result<(u64, Vec<(u64, u32)>)> {
    let n = res
        .unit_order()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("residue field at P is too large".into()))?;
    let f = factor_u64(n);
    if f.iter().any(|&(l, _)| l > DLOG_LIMIT) {
        return Err(Error::Unsupported(format!(
            "|P| - 1 = {n} has a prime factor beyond the discrete log limit"
        )));
    }
    Ok((n, f))
}

fn primitive(res: &QuadOver, n: u64, factors: &[(u64, u32)]) -> Result<QuadElem> {
    let e = res.base();
    let mut rng = rng::stream(PRIMITIVE_STREAM);
    for _ in 0..1000 {
        let a = e.element(rng.gen_range(0..e.order_u64().unwrap_or(u64::MAX)));
        let b = e.element(rng.gen_range(0..e.order_u64().unwrap_or(u64::MAX)));
        let x = QuadElem { a, b };
        if res.is_zero(&x) {
            continue;
        }
        if factors.iter().all(|&(l, _)| !res.is_one(&res.pow_u64(&x, n / l))) {
            return Ok(x);
        }
    }
    Err(Error::BudgetExhausted("no primitive element of F_P found".into()))
}

/// Discrete log of `t` to the base `z` of order `n` (Pohlig-Hellman, BSGS per prime).
pub fn dlog(res: &QuadOver, z: &QuadElem, t: &QuadElem, n: u64, factors: &[(u64, u32)]) -> Result<u64> {
    let mut residues: Vec<(u128, u128)> = Vec::new();
    for &(l, e) in factors {
        let le = l.pow(e);
        let gl = res.pow_u64(z, n / le);
        let tl = res.pow_u64(t, n / le);
        // gamma has order l
        let gamma = res.pow_u64(&gl, le / l);
        let gl_inv = res.inv(&gl)?;
        let mut x: u64 = 0;
        let mut lp: u64 = 1;
        for k in 0..e {
            // (tl * gl^{-x})^{l^{e-1-k}} = gamma^{digit}
            let s = res.mul(&tl, &res.pow_u64(&gl_inv, x));
            let hk = res.pow_u64(&s, l.pow(e - 1 - k));
            let digit = bsgs(res, &gamma, &hk, l)?;
            x += digit * lp;
            lp *= l;
        }
        residues.push((x as u128, le as u128));
    }
    // CRT
    let mut acc: u128 = 0;
    let mut m: u128 = 1;
    for (r, mi) in residues {
        // find acc' = acc mod m, = r mod mi
        let mut k = 0u128;
        while (acc + k * m) % mi != r {
            k += 1;
            if k > mi {
                return Err(Error::consistency("CRT failed in discrete log"));
            }
        }
        acc += k * m;
        m *= mi;
    }
    Ok((acc % n as u128) as u64)
}

fn bsgs(res: &QuadOver, g: &QuadElem, t: &QuadElem, l: u64) -> Result<u64> {
    let m = isqrt_ceil(l as u128) as u64;
    let mut table: HashMap<QuadElem, u64> = HashMap::with_capacity(m as usize);
    let mut cur = res.one();
    for j in 0..m {
        table.entry(cur.clone()).or_insert(j);
        cur = res.mul(&cur, g);
    }
    let step = res.inv(&res.pow_u64(g, m))?;
    let mut y = t.clone();
    for i in 0..=m {
        if let Some(j) = table.get(&y) {
            return Ok((i * m + j) % l);
        }
        y = res.mul(&y, &step);
    }
    Err(Error::consistency("element outside the expected cyclic subgroup"))
}

/// Structure of `Cl^{P inf}_K` given `Pic^0`.
pub fn ray_class_from_pic(curve: &HyperCurve, p: &PrimePoly, pic: &Pic0) -> Result<RayClassData> {
    let place = InertPlace::new(curve, p)?;
    let res = place.residue();
    let (n, factors) = unit_group_factors(res)?;
    let zeta = primitive(res, n, &factors)?;
    let gens = pic.generators.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(pic.relations.len() + 1);
    let mut kernel_row = vec![BigInt::from(0); gens + 1];
    kernel_row[0] = BigInt::from(n);
    rows.push(kernel_row);
    for rel in &pic.relations {
        let mut formal: Formal = Vec::new();
        for (c, g) in rel.iter().zip(&pic.generators) {
            if *c == 0 {
                continue;
            }
            for (k, dv) in &g.lift {
                formal.push((c * k, dv.clone()));
            }
        }
        let val = place.evaluate(&formal)?;
        let k = dlog(res, &zeta, &val, n, &factors)?;
        let mut row = vec![BigInt::from(0); gens + 1];
        row[0] = -BigInt::from(k);
        for (j, c) in rel.iter().enumerate() {
            row[j + 1] = BigInt::from(*c);
        }
        rows.push(row);
    }
    let torsion = presentation(gens + 1, &rows)?;
    let expect = n as u128 * pic.h as u128;
    if torsion.free_rank != 0 || torsion.torsion_order() != expect {
        return Err(Error::consistency(format!(
            "ray class torsion {:?} does not have order (|P|-1) h = {expect}",
            torsion.invariants
        )));
    }
    Ok(RayClassData {
        h: pic.h,
        pic0: pic.structure.clone(),
        kernel_order: n,
        ray: AbGroupStruct {
            free_rank: 1,
            invariants: torsion.invariants,
        },
    })
}

fn check_setting(k: &QuadExt, p: &PrimePoly) -> Result<HyperCurve> {
    if k.infinity_type() != SplitType::Ramified {
        return Err(Error::Unsupported(
            "ray class groups are implemented only when infinity ramifies (odd degree radicand)".into(),
        ));
    }
    if k.split_type_finite(p)? != SplitType::Inert {
        return Err(Error::invalid(format!("{p} is not inert in K")));
    }
    HyperCurve::from_ext(k)
}

/// `Cl^{P inf}_K` for `p` inert in `K`, infinity ramified.
pub fn ray_class_structure(k: &QuadExt, p: &PrimePoly) -> Result<RayClassData> {
    let curve = check_setting(k, p)?;
    let pic = curve.group_structure()?;
    ray_class_from_pic(&curve, p, &pic)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassOutcome {
    Obstructed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalClassCheck {
    pub outcome: ClassOutcome,
    pub data: RayClassData,
    /// `(|p|^2 - 1) / (q^2 - 1)`.
    pub z_order: u64,
    /// `Z(z_order) x Cl_K`.
    pub target: AbGroupStruct,
    pub can_surject: bool,
}

/// Obstructed iff `Cl^{P inf}_K` cannot surject onto `Z((|p|^2-1)/(q^2-1)) x Cl_K`.
pub fn check_global_obstruction(k: &QuadExt, p: &PrimePoly) -> Result<GlobalClassCheck> {
    let data = ray_class_structure(k, p)?;
    let q = k.field().q() as u64;
    let z_order = data.kernel_order / (q * q - 1);
    let cl_k = AbGroupStruct {
        free_rank: 1,
        invariants: data.pic0.invariants.clone(),
    };
    let target = AbGroupStruct::finite(vec![z_order]).product(&cl_k);
    let surj = can_surject(&data.ray, &target);
    Ok(GlobalClassCheck {
        outcome: if surj {
            ClassOutcome::Inconclusive
        } else {
            ClassOutcome::Obstructed
        },
        data,
        z_order,
        target,
        can_surject: surj,
    })
}
