//! Enumeration of polynomials and primes of `A` in canonical order.
//!
//! A monic polynomial `T^n + c_{n-1} T^{n-1} + ... + c_0` is indexed by the
//! integer `sum c_i q^i`; increasing index is the canonical order.

use super::factor::{is_irreducible, is_squarefree, PrimePoly};
use super::fq::PrimeField;
use super::poly::Poly;

/// Largest index space (`q^n`) that the prime sieve allocates a bitmap for.
const SIEVE_LIMIT: u64 = 1 << 27;

pub fn monic_count(field: PrimeField, n: usize) -> Option<u64> {
    (field.q() as u64).checked_pow(n as u32)
}

pub fn index_to_monic(field: PrimeField, n: usize, mut idx: u64) -> Poly {
    let q = field.q() as u64;
    let mut c = Vec::with_capacity(n + 1);
    for _ in 0..n {
        c.push((idx % q) as u32);
        idx /= q;
    }
    c.push(1);
    Poly::from_raw(field.q(), c)
}

/// Index of a monic polynomial of degree `n` in the canonical order.
pub fn monic_to_index(f: &Poly) -> u64 {
    debug_assert!(f.is_monic());
    let q = f.q() as u64;
    let n = f.deg() as usize;
    (0..n).rev().fold(0, |acc, i| acc * q + f.coeff(i) as u64)
}

/// Monic polynomials of degree `n`.
pub fn monic_of_degree(field: PrimeField, n: usize) -> impl Iterator<Item = Poly> {
    let count = monic_count(field, n).expect("enumeration space fits in u64");
    (0..count).map(move |i| index_to_monic(field, n, i))
}

/// All polynomials with `deg <= n`, including zero, in canonical order:
/// by degree, then leading coefficient, then the lower coefficients.
pub fn polys_up_to_degree(field: PrimeField, n: i64) -> impl Iterator<Item = Poly> {
    let q = field.q();
    let zero = (n >= 0).then(|| Poly::zero(field));
    zero.into_iter()
        .chain((0..=n.max(-1)).filter(move |_| n >= 0).flat_map(move |d| {
            let d = d as usize;
            (1..q).flat_map(move |lc| {
                monic_of_degree(field, d).map(move |f| {
                    let mut c = f.coeffs().to_vec();
                    c[d] = lc;
                    Poly::from_raw(q, c)
                })
            })
        }))
}

/// Monic square-free polynomials of degree `0..=n` (the constant `1` first).
pub fn squarefree_monic_up_to(field: PrimeField, n: i64) -> impl Iterator<Item = Poly> {
    (0..=n.max(-1))
        .filter(move |_| n >= 0)
        .flat_map(move |d| monic_of_degree(field, d as usize))
        .filter(is_squarefree)
}

/// Monic primes of degree exactly `n`, in canonical order.
pub struct PrimesOfDegree {
    field: PrimeField,
    n: usize,
    next: u64,
    end: u64,
    composite: Option<Vec<u64>>,
}

impl PrimesOfDegree {
    pub fn new(field: PrimeField, n: usize) -> PrimesOfDegree {
        assert!(n >= 1, "primes have positive degree");
        let end = monic_count(field, n).expect("enumeration space fits in u64");
        let composite = (end <= SIEVE_LIMIT && n >= 2).then(|| sieve(field, n));
        PrimesOfDegree {
            field,
            n,
            next: 0,
            end,
            composite,
        }
    }
}

impl Iterator for PrimesOfDegree {
    type Item = PrimePoly;

    fn next(&mut self) -> Option<PrimePoly> {
        while self.next < self.end {
            let i = self.next;
            self.next += 1;
            match &self.composite {
                Some(bits) => {
                    if bits[(i / 64) as usize] >> (i % 64) & 1 == 0 {
                        return Some(PrimePoly::new_unchecked(index_to_monic(self.field, self.n, i)));
                    }
                }
                None => {
                    let f = index_to_monic(self.field, self.n, i);
                    if self.n == 1 || is_irreducible(&f).expect("nonconstant") {
                        return Some(PrimePoly::new_unchecked(f));
                    }
                }
            }
        }
        None
    }
}

/// Monic primes of degree `1..=n`, by degree.
pub fn primes_up_to_degree(field: PrimeField, n: usize) -> impl Iterator<Item = PrimePoly> {
    (1..=n).flat_map(move |d| PrimesOfDegree::new(field, d))
}

/// Bitmap of reducible monic polynomials of degree `n`: every product `f*g`
/// with `f` prime of degree `k <= n/2` and `g` monic of degree `n-k`. The
/// products are walked with an odometer over the coefficients of `g`, each
/// step adding a shifted copy of `f` (adding it `q` times wraps a digit).
fn sieve(field: PrimeField, n: usize) -> Vec<u64> {
    let q = field.q() as u64;
    let size = q.pow(n as u32);
    let mut bits = vec![0u64; size.div_ceil(64) as usize];
    let pw: Vec<u64> = (0..n).map(|i| q.pow(i as u32)).collect();
    for k in 1..=n / 2 {
        let m = n - k;
        for f in PrimesOfDegree::new(field, k) {
            let fc: Vec<u64> = f.coeffs().iter().map(|&x| x as u64).collect();
            // product coefficients for g = T^m
            let mut prod = vec![0u64; n + 1];
            prod[m..=n].copy_from_slice(&fc);
            let mut idx: u64 = (0..n).map(|i| prod[i] * pw[i]).sum();
            let mut digits = vec![0u64; m];
            loop {
                bits[(idx / 64) as usize] |= 1 << (idx % 64);
                // advance the odometer
                let mut j = 0;
                loop {
                    if j == m {
                        break;
                    }
                    for (i, &fi) in fc.iter().enumerate() {
                        let pos = j + i;
                        if pos >= n {
                            break;
                        }
                        let old = prod[pos];
                        let mut new = old + fi;
                        if new >= q {
                            new -= q;
                        }
                        prod[pos] = new;
                        idx = idx + new * pw[pos] - old * pw[pos];
                    }
                    digits[j] += 1;
                    if digits[j] < q {
                        break;
                    }
                    digits[j] = 0;
                    j += 1;
                }
                if j == m {
                    break;
                }
            }
        }
    }
    bits
}
