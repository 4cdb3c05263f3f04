//! Finitely generated abelian groups: Smith normal form and surjection tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::prime_factors_u64;
use crate::error::{Error, Result};

/// `Z^free_rank x Z/d_1 x ... x Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroupStruct {
    pub free_rank: u32,
    pub invariants: Vec<u64>,
}

impl AbGroupStruct {
    pub fn finite(invariants: Vec<u64>) -> AbGroupStruct {
        AbGroupStruct::from_orders(0, &invariants)
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn from_orders(free_rank: u32, orders: &[u64]) -> AbGroupStruct {
        let n = orders.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for (i, &o) in orders.iter().enumerate() {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::from(o);
            rows.push(r);
        }
        let mut g = presentation(n, &rows).expect("diagonal presentation");
        g.free_rank += free_rank;
        // a zero order is a free factor
        g
    }

    pub fn torsion_order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    pub fn is_cyclic_torsion(&self) -> bool {
        self.invariants.len() <= 1
    }

    /// Direct product.
    pub fn product(&self, o: &AbGroupStruct) -> AbGroupStruct {
        let mut orders = self.invariants.clone();
        orders.extend_from_slice(&o.invariants);
        AbGroupStruct::from_orders(self.free_rank + o.free_rank, &orders)
    }

    /// `#{i : l^k | d_i}`.
    fn count_divisible(&self, lk: u128) -> u32 {
        self.invariants
            .iter()
            .filter(|&&d| (d as u128).is_multiple_of(lk))
            .count() as u32
    }
}

/// Structure of `Z^n / (row span of rels)`.
pub fn presentation(n: usize, rels: &[Vec<BigInt>]) -> Result<AbGroupStruct> {
    for r in rels {
        if r.len() != n {
            return Err(Error::invalid(
                "relation length does not match the number of generators",
            ));
        }
    }
    let diag = smith_diagonal(rels.to_vec(), n);
    let rank = diag.len();
    let mut invariants = Vec::new();
    for d in diag {
        if d.is_one() {
            continue;
        }
        invariants.push(
            d.to_u64()
                .ok_or_else(|| Error::Unsupported("invariant factor exceeds u64".into()))?,
        );
    }
    Ok(AbGroupStruct {
        free_rank: (n - rank) as u32,
        invariants,
    })
}

/// Nonzero diagonal of the Smith normal form of an integer matrix, in
/// divisibility order.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: nonzero entry of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // clear column t
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let qt = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let s = &qt * &m[t][j];
                    m[i][j] -= s;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let qt = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let s = &qt * &row[t];
                    row[j] -= s;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the rest of the block
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let s = m[i][j].clone();
                        m[t][j] += s;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Whether a surjective homomorphism `g -> h` exists. For every prime `l` and
/// `k >= 1` the number of generators of `g` of order divisible by `l^k`
/// (free generators count for every `k`) must dominate that of `h`.
pub fn can_surject(g: &AbGroupStruct, h: &AbGroupStruct) -> bool {
    if g.free_rank < h.free_rank {
        return false;
    }
    let mut primes: Vec<u64> = h.invariants.iter().flat_map(|&d| prime_factors_u64(d)).collect();
    primes.sort_unstable();
    primes.dedup();
    for l in primes {
        let top = h.invariants.iter().copied().max().unwrap_or(1) as u128;
        let mut lk = l as u128;
        while lk <= top {
            if g.free_rank + g.count_divisible(lk) < h.free_rank + h.count_divisible(lk) {
                return false;
            }
            lk *= l as u128;
        }
    }
    true
}
