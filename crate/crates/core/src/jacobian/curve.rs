//! The curve `y^2 = d(x)` with `deg d` odd, its point counts and L-polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gfpoly::{is_squarefree, ExtField, FqElem, Poly, PrimeField};
use crate::symbols::QuadExt;

/// Largest field size `q^k` that point counting will enumerate.
const COUNT_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCurve {
    d: Poly,
    g: usize,
}

impl HyperCurve {
    /// `d` must be square-free of odd degree over a field of odd order.
    pub fn new(d: Poly) -> Result<HyperCurve> {
        if d.field().q().is_multiple_of(2) {
            return Err(Error::Unsupported("characteristic 2".into()));
        }
        if d.deg() < 1 || d.deg() % 2 == 0 {
            return Err(Error::Unsupported(format!(
                "only odd-degree models (infinity ramified) are implemented, got degree {}",
                d.deg()
            )));
        }
        if !is_squarefree(&d) {
            return Err(Error::invalid(format!("{d} is not square-free")));
        }
        let g = (d.deg() as usize - 1) / 2;
        Ok(HyperCurve { d, g })
    }

    pub fn from_ext(k: &QuadExt) -> Result<HyperCurve> {
        HyperCurve::new(k.d().clone())
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn field(&self) -> PrimeField {
        self.d.field()
    }

    pub fn q(&self) -> u32 {
        self.d.q()
    }

    /// Leading coefficient of `d`.
    pub fn lc(&self) -> FqElem {
        self.d.lc_elem()
    }

    /// Projective points over `F_{q^k}`: the affine solutions plus the one
    /// point at infinity.
    pub fn count_points(&self, k: usize) -> Result<u64> {
        if k == 0 || (self.g > 0 && k > 2 * self.g) {
            return Err(Error::invalid(format!("point count degree {k} out of range 1..=2g")));
        }
        let size = (self.q() as u64)
            .checked_pow(k as u32)
            .filter(|&s| s <= COUNT_LIMIT)
            .ok_or_else(|| Error::Unsupported(format!("field of size {}^{k} is too large to enumerate", self.q())))?;
        let mut chi_sum: i64 = 0;
        if k == 1 {
            let f = self.field();
            for x in 0..self.q() {
                let v = f.elem(self.d.eval(x) as i64);
                chi_sum += if v.is_zero() {
                    0
                } else if v.is_square() {
                    1
                } else {
                    -1
                };
            }
        } else {
            let e = ExtField::new(self.field(), k)?;
            for x in e.elements() {
                chi_sum += e.quadratic_character(&e.eval(&self.d, &x)) as i64;
            }
        }
        Ok((size as i64 + 1 + chi_sum) as u64)
    }

    /// The numerator `L(t)` of the zeta function, coefficients `c_0..c_{2g}`.
    pub fn l_polynomial(&self) -> Result<LPolynomial> {
        let counts = (1..=self.g).map(|k| self.count_points(k)).collect::<Result<Vec<_>>>()?;
        LPolynomial::from_counts(self.q(), &counts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    q: u32,
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Builds `L` from `N_1..N_g`: Newton's identities give `c_1..c_g` and the
    /// functional equation `c_{2g-i} = q^{g-i} c_i` gives the rest.
    pub fn from_counts(q: u32, counts: &[u64]) -> Result<LPolynomial> {
        let g = counts.len();
        let qb = BigInt::from(q);
        // power sums of the reciprocal roots
        let s: Vec<BigInt> = counts
            .iter()
            .enumerate()
            .map(|(i, &n)| qb.pow(i as u32 + 1) + 1 - BigInt::from(n))
            .collect();
        let mut c = vec![BigInt::one()];
        for k in 1..=g {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc -= &s[i - 1] * &c[k - i];
            }
            if !(&acc % BigInt::from(k)).is_zero() {
                return Err(Error::consistency(format!("Newton identity not integral at c_{k}")));
            }
            c.push(acc / BigInt::from(k));
        }
        for i in (0..g).rev() {
            let v = qb.pow((g - i) as u32) * &c[i];
            c.push(v);
        }
        let l = LPolynomial { q, coeffs: c };
        l.check_bounds()?;
        Ok(l)
    }

    /// `|c_i| <= binom(2g, i) q^{i/2}`, forced by the Riemann hypothesis.
    fn check_bounds(&self) -> Result<()> {
        let g2 = self.coeffs.len() - 1;
        let mut binom = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                binom = binom * BigInt::from(g2 - i + 1) / BigInt::from(i);
            }
            // c^2 <= binom^2 q^i
            let lhs = c * c;
            let rhs = &binom * &binom * BigInt::from(self.q).pow(i as u32);
            if lhs > rhs {
                return Err(Error::consistency(format!(
                    "L-polynomial coefficient c_{i} = {c} violates the Weil bound"
                )));
            }
        }
        if self.eval_one() <= BigInt::zero() {
            return Err(Error::consistency("L(1) is not positive"));
        }
        Ok(())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn genus(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// The class number `h = L(1)`.
    pub fn class_number(&self) -> Result<u64> {
        u64::try_from(self.eval_one()).map_err(|_| Error::Unsupported("class number exceeds u64".into()))
    }

    /// Exact check of `c_{2g-i} = q^{g-i} c_i`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus();
        let qb = BigInt::from(self.q);
        (0..=g).all(|i| self.coeffs[2 * g - i] == qb.pow((g - i) as u32) * &self.coeffs[i])
    }

    /// `N_k = q^k + 1 - sum alpha_i^k` recovered from the coefficients.
    pub fn point_count(&self, k: usize) -> BigInt {
        let g2 = self.coeffs.len() - 1;
        // power sums from the coefficients by Newton's identities
        let mut s: Vec<BigInt> = Vec::with_capacity(k);
        for j in 1..=k {
            let mut acc = if j <= g2 {
                -BigInt::from(j) * &self.coeffs[j]
            } else {
                BigInt::zero()
            };
            for i in 1..j {
                if j - i <= g2 {
                    acc -= &self.coeffs[j - i] * &s[i - 1];
                }
            }
            s.push(acc);
        }
        BigInt::from(self.q).pow(k as u32) + 1 - &s[k - 1]
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one() && !self.coeffs[0].is_negative()
    }
}
