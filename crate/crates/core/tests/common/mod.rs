//! Brute-force oracles and the property suites built on them. Each suite
//! panics on the first disagreement and returns the number of cases checked.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use hasse_core::certificate::{from_json, to_json, verify};
use hasse_core::gfpoly::{
    factorize, is_squarefree, monic_of_degree, parse_poly, polys_up_to_degree, primes_up_to_degree, Poly, PrimeField,
    PrimePoly, PrimesOfDegree,
};
use hasse_core::hasse::{check_violation, Problem, RouteName, Verdict};
use hasse_core::jacobian::{can_surject, AbGroupStruct, Divisor, Formal, HyperCurve, InertPlace};
use hasse_core::rng;
use hasse_core::symbols::{jacobi, legendre, reciprocity_check, split_type_of_radicand, Place, SplitType};
use hasse_core::weil::{d_set, enumerate_weil, in_prime_set, power_sum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---- finite abelian groups

/// Elements of `Z/n_1 x ... x Z/n_k` as coordinate vectors, indexed in mixed radix.
struct Finite {
    mods: Vec<u64>,
}

impl Finite {
    fn order(&self) -> usize {
        self.mods.iter().product::<u64>() as usize
    }

    fn coords(&self, mut i: usize) -> Vec<u64> {
        self.mods
            .iter()
            .map(|&m| {
                let c = i as u64 % m;
                i /= m as usize;
                c
            })
            .collect()
    }

    fn index(&self, c: &[u64]) -> usize {
        let mut i = 0usize;
        for (x, m) in c.iter().zip(&self.mods).rev() {
            i = i * *m as usize + *x as usize;
        }
        i
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.mods)
            .map(|((a, b), m)| (a + b) % m)
            .collect();
        self.index(&s)
    }

    fn times(&self, a: usize, k: u64) -> usize {
        let x = self.coords(a);
        let s: Vec<u64> = x.iter().zip(&self.mods).map(|(a, m)| (a * (k % m)) % m).collect();
        self.index(&s)
    }

    /// The subgroup generated by `sub` and `g`.
    fn join(&self, sub: &BTreeSet<usize>, g: usize) -> BTreeSet<usize> {
        let mut out = sub.clone();
        let mut frontier: Vec<usize> = sub.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let y = self.add(x, g);
            if out.insert(y) {
                frontier.push(y);
            }
        }
        out
    }
}

/// A surjection `Z/a_1 x ... -> H` is a choice of images `h_i` with `a_i h_i = 0`
/// that generate `H`. Search over reachable subgroups, level by level.
pub fn surjects_by_search(g: &[u64], h: &[u64]) -> bool {
    let hh = Finite { mods: h.to_vec() };
    let n = hh.order();
    let mut level: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    level.insert(BTreeSet::from([0usize]));
    for &a in g {
        let images: Vec<usize> = (0..n).filter(|&x| hh.times(x, a) == 0).collect();
        let mut next = BTreeSet::new();
        for sub in &level {
            for &x in &images {
                next.insert(hh.join(sub, x));
            }
        }
        level = next;
    }
    level.iter().any(|s| s.len() == n)
}

fn random_orders(rng: &mut ChaCha8Rng, max_len: usize, max_each: u64, max_order: u64) -> Vec<u64> {
    loop {
        let len = rng.gen_range(1..=max_len);
        let v: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=max_each)).collect();
        if v.iter().product::<u64>() <= max_order {
            return v;
        }
    }
}

pub fn surjection_suite() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let n = 1500;
    for _ in 0..n {
        let g = random_orders(&mut rng, 3, 16, 200);
        let h = random_orders(&mut rng, 2, 12, 60);
        let got = can_surject(&AbGroupStruct::finite(g.clone()), &AbGroupStruct::finite(h.clone()));
        assert_eq!(got, surjects_by_search(&g, &h), "G = {g:?}, H = {h:?}");
    }
    n
}

// ---- hyperelliptic curves

pub fn random_curve(rng: &mut ChaCha8Rng, q: u32, deg: usize) -> HyperCurve {
    let f = PrimeField::new(q).unwrap();
    loop {
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..q as i64)).collect();
        c.push(rng.gen_range(1..q as i64));
        let d = Poly::from_coeffs(f, &c);
        if is_squarefree(&d) {
            return HyperCurve::new(d).unwrap();
        }
    }
}

/// Every reduced pair `(u, v)`: `u` monic of degree at most `g`, `deg v < deg u`,
/// `u | v^2 - d`. Checked here directly, not through the curve.
pub fn brute_divisors(c: &HyperCurve) -> Vec<Divisor> {
    let f = c.field();
    let mut out = vec![Divisor {
        u: Poly::one(f),
        v: Poly::zero(f),
    }];
    for du in 1..=c.genus() {
        for u in monic_of_degree(f, du) {
            for v in polys_up_to_degree(f, du as i64 - 1) {
                if v.square().sub(c.d()).rem(&u).unwrap().is_zero() {
                    out.push(Divisor { u: u.clone(), v });
                }
            }
        }
    }
    out
}

fn affine_points(c: &HyperCurve) -> u64 {
    let q = c.q();
    let squares: Vec<u32> = (0..q).map(|y| y * y % q).collect();
    (0..q)
        .map(|x| squares.iter().filter(|&&s| s == c.d().eval(x)).count() as u64)
        .sum()
}

pub fn curves() -> Vec<HyperCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for &(q, deg, n) in &[(3, 3, 6), (3, 5, 10), (5, 3, 6), (5, 5, 6), (7, 3, 4), (7, 5, 2)] {
        for _ in 0..n {
            out.push(random_curve(&mut rng, q, deg));
        }
    }
    out
}

/// Functional equation, `L(1)` against the brute-force group order, and `N_1`
/// against a direct point count.
pub fn l_polynomial_suite() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut all_curves = curves();
    for i in 0..120 {
        all_curves.push(random_curve(&mut rng, [3, 5, 7][i % 3], [3, 5][i % 2]));
    }
    let mut cases = 0;
    for c in all_curves {
        let l = c.l_polynomial().unwrap();
        assert!(l.satisfies_functional_equation(), "{}", c.d());
        let all = brute_divisors(&c);
        assert_eq!(l.class_number().unwrap(), all.len() as u64, "{}", c.d());
        assert_eq!(l.point_count(1), BigInt::from(affine_points(&c) + 1), "{}", c.d());
        let coeffs = l.coeffs();
        let g = c.genus();
        let q = BigInt::from(c.q());
        for i in 0..=g {
            assert_eq!(coeffs[2 * g - i], q.pow((g - i) as u32) * &coeffs[i]);
        }
        for dv in &all {
            assert!(
                c.mul_u64(dv, all.len() as u64).is_identity(),
                "h x = 0 fails for {dv} on {}",
                c.d()
            );
            cases += 1;
        }
    }
    cases
}

pub fn group_law_suite() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut cases = 0;
    for c in curves() {
        let all = brute_divisors(&c);
        for dv in &all {
            assert_eq!(c.divisor(dv.u.clone(), dv.v.clone()).unwrap(), *dv);
            assert!(c.add(dv, &c.neg(dv)).is_identity());
            assert_eq!(c.add(dv, &c.identity()), *dv);
        }
        for _ in 0..40 {
            let pick = |rng: &mut ChaCha8Rng| all[rng.gen_range(0..all.len())].clone();
            let (a, b, x) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let ab = c.add(&a, &b);
            assert!(all.contains(&ab));
            assert_eq!(ab, c.add(&b, &a));
            assert_eq!(c.add(&ab, &x), c.add(&a, &c.add(&b, &x)));
            assert_eq!(c.double(&a), c.add(&a, &a));
            let k = rng.gen_range(-20i64..20);
            let step = if k < 0 { c.neg(&a) } else { a.clone() };
            let mut acc = c.identity();
            for _ in 0..k.unsigned_abs() {
                acc = c.add(&acc, &step);
            }
            assert_eq!(c.mul(&a, k), acc);
            cases += 1;
        }
    }
    cases
}

/// Counting elements killed by each `n | h` pins down the group up to isomorphism.
pub fn pic0_suite() -> usize {
    let mut cases = 0;
    for c in curves() {
        let all = brute_divisors(&c);
        let h = all.len() as u64;
        let pic = c.group_structure().unwrap();
        assert_eq!(pic.h, h);
        for n in (1..=h).filter(|n| h.is_multiple_of(*n)) {
            let brute = all.iter().filter(|d| c.mul_u64(d, n).is_identity()).count() as u64;
            let from_struct: u64 = pic
                .structure
                .invariants
                .iter()
                .map(|&m| num_integer::gcd(m, n))
                .product();
            assert_eq!(brute, from_struct, "n = {n} on {}", c.d());
            cases += 1;
        }
    }
    cases
}

fn inert_prime(c: &HyperCurve) -> Option<PrimePoly> {
    (1..=3).flat_map(|n| PrimesOfDegree::new(c.field(), n)).find(|p| {
        let r = p.poly();
        let squares: HashSet<Poly> = polys_up_to_degree(c.field(), r.deg() - 1)
            .map(|y| y.square().rem(r).unwrap())
            .collect();
        let dm = c.d().rem(r).unwrap();
        !dm.is_zero() && !squares.contains(&dm)
    })
}

/// `D - deg(D) B` times its order, with `B` a rational point.
fn principal_from(c: &HyperCurve, a: &Divisor, base: &Divisor, h: u64) -> Formal {
    let shifted = c.add(a, &c.mul(base, -(a.degree() as i64)));
    let n = (1..=h).find(|&n| c.mul_u64(&shifted, n).is_identity()).unwrap() as i64;
    vec![(n, a.clone()), (-n * a.degree() as i64, base.clone())]
}

/// `f_{R + S}(P) = f_R(P) f_S(P)` and `f_{kR}(P) = f_R(P)^k` for principal `R, S`.
pub fn miller_suite() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases = 0;
    for c in curves() {
        let Some(p) = inert_prime(&c) else { continue };
        let place = InertPlace::new(&c, &p).unwrap();
        let res = place.residue();
        let all = brute_divisors(&c);
        let h = all.len() as u64;
        let away: Vec<&Divisor> = all
            .iter()
            .filter(|d| !d.is_identity() && d.u.gcd(p.poly()).is_one())
            .collect();
        let Some(base) = away.iter().find(|d| d.degree() == 1).map(|d| (*d).clone()) else {
            continue;
        };
        let mut cache: HashMap<usize, Formal> = HashMap::new();
        for _ in 0..120 {
            let i = rng.gen_range(0..away.len());
            let j = rng.gen_range(0..away.len());
            let ri = cache
                .entry(i)
                .or_insert_with(|| principal_from(&c, away[i], &base, h))
                .clone();
            let rj = cache
                .entry(j)
                .or_insert_with(|| principal_from(&c, away[j], &base, h))
                .clone();
            let vi = place.evaluate(&ri).unwrap();
            let vj = place.evaluate(&rj).unwrap();
            let both: Formal = ri.iter().chain(rj.iter()).cloned().collect();
            assert_eq!(place.evaluate(&both).unwrap(), res.mul(&vi, &vj));
            let k = rng.gen_range(-3i64..=3);
            let scaled: Formal = ri.iter().map(|(e, d)| (e * k, d.clone())).collect();
            let want = if k >= 0 {
                res.pow_u64(&vi, k as u64)
            } else {
                res.pow_u64(&res.inv(&vi).unwrap(), (-k) as u64)
            };
            assert_eq!(place.evaluate(&scaled).unwrap(), want);
            cases += 1;
        }
    }
    cases
}

// ---- Weil data

fn is_square_mod(a: u32, q: u32) -> bool {
    (0..q).any(|x| x * x % q == a % q)
}

/// Admissibility of `X^2 - tX + mu y` read off the Newton polygon at infinity.
/// Points `(0, -deg y)`, `(1, -deg t)`, `(2, 0)`: a single segment needs
/// `2 deg t <= deg y`. Then the roots lie in one place above infinity unless
/// they are `F_inf`-rational. For odd `deg y` the slope is not integral, so
/// they are not. For even `deg y = 2k`, put `X = T^k Z`; the reduction
/// `Z^2 - tau Z + mu lc(y)` (`tau` the `T^k` coefficient of `t`) decides by
/// Hensel when it is separable. A double root leaves the discriminant
/// `t^2 - 4 mu y` of lower degree, and whether it is a square in `F_inf` is
/// the parity of its degree and the character of its leading coefficient.
pub fn newton_admissible(t: &Poly, mu: u32, y: &PrimePoly) -> bool {
    let q = y.q();
    let dy = y.deg();
    if 2 * t.deg() > dy {
        return false;
    }
    if dy % 2 == 1 {
        return true;
    }
    let k = (dy / 2) as usize;
    let tau = t.coeff(k);
    let c0 = mu * y.lc() % q;
    let res_disc = (tau * tau + 4 * (q - c0)) % q;
    if res_disc != 0 {
        return !is_square_mod(res_disc, q);
    }
    let full = t.square().sub(&y.scale(4 * mu % q));
    if full.is_zero() {
        return false;
    }
    full.deg() % 2 == 1 || !is_square_mod(full.lc(), q)
}

/// Exhaustive over `deg y <= 2`, `q in {3, 5}`, and every `(t, mu)` with `deg t <= deg y`.
pub fn weil_suite() -> usize {
    let mut checked = 0;
    for q in [3u32, 5] {
        let f = PrimeField::new(q).unwrap();
        for y in primes_up_to_degree(f, 2) {
            let expect: BTreeSet<(Poly, u32)> = polys_up_to_degree(f, y.deg())
                .flat_map(|t| (1..q).map(move |mu| (t.clone(), mu)))
                .filter(|(t, mu)| newton_admissible(t, *mu, &y))
                .collect();
            checked += polys_up_to_degree(f, y.deg()).count() * (q as usize - 1);
            let got: BTreeSet<(Poly, u32)> = enumerate_weil(&y).unwrap().into_iter().map(|w| (w.t, w.mu)).collect();
            assert_eq!(got, expect, "y = {y}");
        }
    }
    checked
}

/// `2x2` matrices over `A`.
type Mat = [[Poly; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `s_r` against the trace of the `r`-th power of the companion matrix.
pub fn power_sum_suite() -> usize {
    let mut checked = 0;
    for q in [3u32, 5, 7] {
        let f = PrimeField::new(q).unwrap();
        for y in primes_up_to_degree(f, 2) {
            for w in enumerate_weil(&y).unwrap() {
                let comp: Mat = [[Poly::zero(f), w.norm().neg()], [Poly::one(f), w.t.clone()]];
                let mut m: Mat = [[Poly::one(f), Poly::zero(f)], [Poly::zero(f), Poly::one(f)]];
                for r in 0..25u64 {
                    assert_eq!(power_sum(&w, r), m[0][0].add(&m[1][1]), "r = {r}, t = {}, y = {y}", w.t);
                    m = mat_mul(&m, &comp);
                    checked += 1;
                }
            }
        }
    }
    checked
}

/// `F_{q^n}` as `F_q[X] / (f)`, every element listed.
struct Ext {
    f: Poly,
    elems: Vec<Poly>,
}

impl Ext {
    fn new(field: PrimeField, n: usize) -> Ext {
        let f = PrimesOfDegree::new(field, n).next().unwrap().poly().clone();
        Ext {
            f,
            elems: polys_up_to_degree(field, n as i64 - 1).collect(),
        }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.f).unwrap()
    }

    fn pow(&self, a: &Poly, e: u64) -> Poly {
        a.pow_mod_u64(e, &self.f).unwrap()
    }

    /// `g(a)` for `g` over `F_q`.
    fn eval(&self, g: &Poly, a: &Poly) -> Poly {
        g.coeffs().iter().rev().fold(Poly::zero(g.field()), |acc, &c| {
            self.mul(&acc, a).add(&Poly::constant(g.field(), c as i64))
        })
    }
}

/// Whether `p` (of degree `s`) divides a nonzero element of `D(y, s)`,
/// decided at one root `alpha` of `p` in `F_{q^{2s}}`. The norm vanishes at
/// `alpha` iff one of its conjugate factors `c - tau y^m` does, and `pi`,
/// `pi'` at `alpha` are the two roots of `X^2 - t X + mu y` there. The only
/// zero elements come from `t = 0, eps = 1`: then `c = 2 (mu y)^m = 2 y^m`.
fn brute_in_p(y: &PrimePoly, p: &PrimePoly, ext: &Ext, sqrt: &BTreeMap<Poly, Poly>, traces: &[(Poly, bool)]) -> bool {
    let f = y.field();
    let q = f.q() as u64;
    let m = 2 * (q * q - 1);
    let alpha = ext
        .elems
        .iter()
        .find(|a| ext.eval(p.poly(), a).is_zero())
        .expect("p splits in F_{q^{2s}}");
    let half = Poly::constant(f, (q as i64 + 1) / 2);
    let ya = ext.eval(y.poly(), alpha);
    let ym = ext.pow(&ya, m);
    enumerate_weil(y).unwrap().iter().any(|w| {
        let ta = ext.eval(&w.t, alpha);
        let disc = ext
            .mul(&ta, &ta)
            .sub(&ext.mul(&Poly::constant(f, 4 * w.mu as i64), &ya));
        let r = &sqrt[&disc];
        let (r1, r2) = (ext.mul(&ta.add(r), &half), ext.mul(&ta.sub(r), &half));
        let c = ext.pow(&r1, 2 * m).add(&ext.pow(&r2, 2 * m));
        traces
            .iter()
            .any(|(tau, eps_one)| !(w.t.is_zero() && *eps_one) && c == ext.mul(tau, &ym))
    })
}

/// Membership in `P(y, s)` for every prime of degree `s <= 3`, against
/// [`brute_in_p`] with norm-one `eps` found by exhausting `F_{q^{2s}}`.
pub fn prime_set_suite() -> usize {
    let mut checked = 0;
    let mut outside = 0;
    for (q, ys) in [(3u32, &["T", "T+1", "T^2+1"][..]), (5, &["T", "T+2"][..])] {
        let f = PrimeField::new(q).unwrap();
        for s in 1..=3u32 {
            let ext = Ext::new(f, 2 * s as usize);
            let sqrt: BTreeMap<Poly, Poly> = ext.elems.iter().map(|x| (ext.mul(x, x), x.clone())).collect();
            let qs = (q as u64).pow(s);
            let traces: Vec<(Poly, bool)> = ext
                .elems
                .iter()
                .filter(|e| ext.pow(e, qs + 1).is_one())
                .map(|e| (e.add(&ext.pow(e, qs)), e.is_one()))
                .collect();
            assert_eq!(traces.len() as u64, qs + 1);
            for ys in ys {
                let y = PrimePoly::new(parse_poly(f, ys).unwrap()).unwrap();
                let ds = d_set(&y, s).unwrap();
                for p in PrimesOfDegree::new(f, s as usize) {
                    let want = brute_in_p(&y, &p, &ext, &sqrt, &traces);
                    assert_eq!(in_prime_set(&p, &ds), want, "q = {q}, y = {y}, p = {p}");
                    outside += usize::from(!want);
                    checked += 1;
                }
            }
        }
    }
    assert!(
        outside > 0 && outside < checked,
        "{outside} of {checked} primes outside"
    );
    checked
}

// ---- quadratic symbols

fn squares_mod(b: &Poly) -> HashSet<Poly> {
    polys_up_to_degree(b.field(), b.deg() - 1)
        .map(|x| x.square().rem(b).unwrap())
        .collect()
}

fn brute_legendre(a: &Poly, p: &Poly, squares: &HashSet<Poly>) -> i8 {
    let r = a.rem(p).unwrap();
    if r.is_zero() {
        0
    } else if squares.contains(&r) {
        1
    } else {
        -1
    }
}

/// Every ordered pair of monic primes of degree at most 3, `q in {3, 5}`.
pub fn reciprocity_suite() -> usize {
    let mut pairs = 0;
    for q in [3u32, 5] {
        let f = PrimeField::new(q).unwrap();
        let primes: Vec<_> = primes_up_to_degree(f, 3).collect();
        let squares: Vec<HashSet<Poly>> = primes.iter().map(|p| squares_mod(p)).collect();
        for (i, a) in primes.iter().enumerate() {
            for (j, b) in primes.iter().enumerate() {
                let want = brute_legendre(a, b, &squares[j]);
                assert_eq!(legendre(a, b).unwrap(), want, "({a}/{b})");
                assert_eq!(jacobi(a, b).unwrap(), want, "({a}/{b})");
                if i != j {
                    assert!(reciprocity_check(a, b).unwrap());
                    let back = brute_legendre(b, a, &squares[i]);
                    let sign = if ((q - 1) / 2) as i64 * a.deg() * b.deg() % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    assert_eq!(want * back, sign, "reciprocity for {a}, {b}");
                    pairs += 1;
                }
            }
        }
    }
    pairs
}

/// For composite monic `b`, the Jacobi symbol is the product over the factorization.
pub fn jacobi_suite() -> usize {
    let mut cases = 0;
    for q in [3u32, 5] {
        let f = PrimeField::new(q).unwrap();
        for db in 1..=3 {
            for b in monic_of_degree(f, db) {
                let fac = factorize(&b).unwrap();
                for a in polys_up_to_degree(f, 2) {
                    let mut want = 1i8;
                    for (p, e) in &fac.factors {
                        want *= brute_legendre(&a, p, &squares_mod(p)).pow(*e);
                    }
                    assert_eq!(jacobi(&a, &b).unwrap(), want, "({a}/{b})");
                    cases += 1;
                }
            }
        }
    }
    cases
}

/// Splitting of `v` in `F(sqrt(m))` against the number of roots of `X^2 - m` mod `v`.
pub fn split_type_suite() -> usize {
    let mut cases = 0;
    for q in [3u32, 5] {
        let f = PrimeField::new(q).unwrap();
        let primes: Vec<_> = primes_up_to_degree(f, 2).collect();
        for dm in 1..=3 {
            for m in monic_of_degree(f, dm) {
                if !is_squarefree(&m) {
                    continue;
                }
                for v in &primes {
                    let r = m.rem(v).unwrap();
                    let roots = polys_up_to_degree(f, v.deg() - 1)
                        .filter(|x| x.square().sub(&r).rem(v).unwrap().is_zero())
                        .count();
                    let want = match roots {
                        0 => SplitType::Inert,
                        1 => SplitType::Ramified,
                        _ => SplitType::Split,
                    };
                    let got = split_type_of_radicand(&m, &Place::Finite(v.clone())).unwrap();
                    assert_eq!(got, want, "{v} in F(sqrt({m}))");
                    cases += 1;
                }
            }
        }
    }
    cases
}

// ---- certificates

fn problems() -> Vec<(Problem, RouteName)> {
    let mut out = Vec::new();
    for q in [3u32, 5] {
        let f = PrimeField::new(q).unwrap();
        let primes: Vec<String> = primes_up_to_degree(f, 2).map(|p| p.to_string()).collect();
        let radicands: Vec<String> = polys_up_to_degree(f, 4)
            .filter(|d| d.deg() >= 1 && is_squarefree(d))
            .map(|d| d.to_string())
            .collect();
        let mut k = 0usize;
        for (i, p) in primes.iter().enumerate().take(4) {
            for qq in primes.iter().skip(i + 1).take(4) {
                let y = if p != "T" && qq != "T" { "T" } else { "T+1" };
                if p == y || qq == y {
                    continue;
                }
                for _ in 0..40 {
                    let d = &radicands[(k * 7919) % radicands.len()];
                    k += 1;
                    let route = [
                        RouteName::Auto,
                        RouteName::Main1,
                        RouteName::Main2,
                        RouteName::GlobalClass,
                    ][k % 4];
                    out.push((Problem::new(q, p, qq, d, Some(y)).unwrap(), route));
                }
            }
        }
    }
    out
}

/// Seed independence, byte-identical JSON round trips, verification, and
/// rejection of a flipped verdict or local summary.
pub fn certificate_suite() -> usize {
    let cases = problems();
    let mut no_violation = 0;
    for (pb, route) in &cases {
        rng::set_global_seed(1);
        let a = check_violation(pb, *route).unwrap();
        rng::set_global_seed(987_654_321);
        let b = check_violation(pb, *route).unwrap();
        let text = to_json(&a).unwrap();
        assert_eq!(text, to_json(&b).unwrap(), "seed dependence for {:?}", a.inputs);
        let back = from_json(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(to_json(&back).unwrap(), text);
        let r = verify(&back).unwrap();
        assert!(r.ok, "{:?}: {:?}", a.inputs, r.problems);
        assert_eq!(r.verdict, a.verdict);
        if a.verdict == Verdict::NoViolation {
            no_violation += 1;
        }
        let mut forged = back.clone();
        forged.verdict = match forged.verdict {
            Verdict::Violation => Verdict::NoViolation,
            _ => Verdict::Violation,
        };
        assert!(!verify(&forged).unwrap().ok);
        let mut forged = back;
        forged.local.all_nonempty ^= true;
        assert!(!verify(&forged).unwrap().ok);
    }
    rng::set_global_seed(rng::DEFAULT_SEED);
    assert!(no_violation > 0, "degenerate sample");
    cases.len()
}
