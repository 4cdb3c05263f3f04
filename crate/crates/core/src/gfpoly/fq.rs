//! The prime field `F_q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted characteristic. Products of two residues fit in 32 bits,
/// which lets polynomial kernels accumulate in `u64` without intermediate
/// reductions.
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;

/// The prime field `F_q`. Cheap to copy; acts as the arithmetic context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !(2..MAX_CHARACTERISTIC).contains(&q) {
            return Err(Error::invalid(format!(
                "field size {q} outside the supported range [2, {MAX_CHARACTERISTIC})"
            )));
        }
        if !is_prime_u64(q as u64) {
            return Err(Error::invalid(format!(
                "field size {q} is not prime (prime-power base fields are not supported)"
            )));
        }
        Ok(PrimeField { q })
    }

    /// Odd-characteristic field, as required by everything built on quadratic symbols.
    pub fn new_odd(q: u32) -> Result<Self> {
        let f = Self::new(q)?;
        if q == 2 {
            return Err(Error::Unsupported(
                "quadratic extensions in characteristic 2 are not supported".into(),
            ));
        }
        Ok(f)
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.q != 2
    }

    pub fn elem(self, value: i64) -> FqElem {
        FqElem {
            value: reduce_i64(value, self.q),
            q: self.q,
        }
    }

    pub fn zero(self) -> FqElem {
        self.elem(0)
    }

    pub fn one(self) -> FqElem {
        self.elem(1)
    }

    /// Nonzero elements `1, 2, ..., q-1`.
    pub fn units(self) -> impl Iterator<Item = FqElem> {
        let q = self.q;
        (1..q).map(move |v| FqElem { value: v, q })
    }

    pub fn elements(self) -> impl Iterator<Item = FqElem> {
        let q = self.q;
        (0..q).map(move |v| FqElem { value: v, q })
    }

    /// Smallest non-square unit. `None` in characteristic 2.
    pub fn non_square(self) -> Option<FqElem> {
        if self.q == 2 {
            return None;
        }
        self.units().find(|x| !x.is_square())
    }
}

#[inline]
pub(crate) fn reduce_i64(v: i64, q: u32) -> u32 {
    v.rem_euclid(q as i64) as u32
}

#[inline]
pub(crate) fn add(a: u32, b: u32, q: u32) -> u32 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u32, b: u32, q: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub(crate) fn neg(a: u32, q: u32) -> u32 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

#[inline]
pub(crate) fn mul(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub(crate) fn pow(mut a: u32, mut e: u64, q: u32) -> u32 {
    let mut r = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, q);
        }
        a = mul(a, a, q);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub(crate) fn inv(a: u32, q: u32) -> Option<u32> {
    if a.is_multiple_of(q) {
        return None;
    }
    // extended Euclid on i64
    let (mut r0, mut r1) = (q as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    Some(reduce_i64(t0, q))
}

/// Quadratic character on `F_q`, with `chi(0) = 0`.
pub(crate) fn quadratic_character(a: u32, q: u32) -> i8 {
    if a == 0 {
        return 0;
    }
    if q == 2 {
        return 1;
    }
    if pow(a, ((q - 1) / 2) as u64, q) == 1 {
        1
    } else {
        -1
    }
}

/// Element of `F_q`, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    value: u32,
    q: u32,
}

impl FqElem {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        PrimeField { q: self.q }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: FqElem) -> FqElem {
        FqElem {
            value: add(self.value, o.value, self.q),
            q: self.q,
        }
    }

    pub fn sub(self, o: FqElem) -> FqElem {
        FqElem {
            value: sub(self.value, o.value, self.q),
            q: self.q,
        }
    }

    pub fn neg(self) -> FqElem {
        FqElem {
            value: neg(self.value, self.q),
            q: self.q,
        }
    }

    pub fn mul(self, o: FqElem) -> FqElem {
        FqElem {
            value: mul(self.value, o.value, self.q),
            q: self.q,
        }
    }

    pub fn inv(self) -> Result<FqElem> {
        inv(self.value, self.q)
            .map(|value| FqElem { value, q: self.q })
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(self, e: u64) -> FqElem {
        FqElem {
            value: pow(self.value, e, self.q),
            q: self.q,
        }
    }

    /// True for nonzero squares.
    pub fn is_square(self) -> bool {
        quadratic_character(self.value, self.q) == 1
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Deterministic primality for 64-bit integers (Miller-Rabin with a base set
/// that is exact below 2^64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_out_of_range() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(1 << 17).is_err());
        assert!(PrimeField::new_odd(2).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn inverses() {
        for q in [3u32, 5, 7, 101] {
            for a in 1..q {
                assert_eq!(mul(a, inv(a, q).unwrap(), q), 1);
            }
            assert!(inv(0, q).is_none());
        }
    }

    #[test]
    fn non_squares() {
        assert_eq!(PrimeField::new(3).unwrap().non_square().unwrap().value(), 2);
        assert_eq!(PrimeField::new(5).unwrap().non_square().unwrap().value(), 2);
        assert_eq!(PrimeField::new(7).unwrap().non_square().unwrap().value(), 3);
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
    }
}
