//! The fields `F_p` and `F_{p^2}` and polynomials over them, with
//! Cantor-Zassenhaus factorization.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::modp::{is_prime, pow_mod};

/// Coordinates `x + y w` over the prime field; `y = 0` when `e = 1`.
pub type Fe = [u64; 2];

/// `F_p` (e = 1) or `F_p[w]/(w^2 - c1 w - c0)` (e = 2), with `p < 2^32`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    e: u32,
    def: [u64; 2],
}

impl Fq {
    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::Input(format!("{p} is not a prime below 2^32")));
        }
        Ok(Fq { p, e: 1, def: [0, 0] })
    }

    /// `w^2 = c0 + c1 w`; rejected unless the quadratic is irreducible mod p.
    pub fn quadratic(p: u64, c0: u64, c1: u64) -> Result<Fq> {
        let base = Fq::prime(p)?;
        let (c0, c1) = (c0 % p, c1 % p);
        let has_root = if p < 1 << 12 {
            (0..p).any(|x| (x * x % p + p - c1 * x % p + p - c0).is_multiple_of(p))
        } else {
            // odd p: discriminant c1^2 + 4 c0 must be a non-residue
            let disc = (c1 * c1 + 4 * c0) % p;
            disc == 0 || pow_mod(disc, (p - 1) / 2, p) == 1
        };
        if has_root {
            return Err(Error::Input(format!("w^2 - {c1}w - {c0} is reducible mod {p}")));
        }
        Ok(Fq { e: 2, def: [c0, c1], ..base })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// `w^2 = c0 + c1 w`.
    pub fn defining(&self) -> [u64; 2] {
        self.def
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn zero(&self) -> Fe {
        [0, 0]
    }

    pub fn one(&self) -> Fe {
        [1, 0]
    }

    pub fn from_int(&self, v: i64) -> Fe {
        [v.rem_euclid(self.p as i64) as u64, 0]
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        [(a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p]
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        [(a[0] + self.p - b[0]) % self.p, (a[1] + self.p - b[1]) % self.p]
    }

    pub fn neg(&self, a: Fe) -> Fe {
        self.sub([0, 0], a)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p;
        if self.e == 1 {
            return [a[0] * b[0] % p, 0];
        }
        let hi = a[1] * b[1] % p;
        let x = (a[0] * b[0] % p + hi * self.def[0] % p) % p;
        let y = ((a[0] * b[1] % p + a[1] * b[0] % p) % p + hi * self.def[1] % p) % p;
        [x, y]
    }

    pub fn pow(&self, a: Fe, mut k: u64) -> Fe {
        let mut acc = self.one();
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn is_zero(&self, a: Fe) -> bool {
        a == [0, 0]
    }

    /// The Frobenius `a -> a^p`, the non-trivial automorphism when `e = 2`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        if self.e == 1 {
            a
        } else {
            self.pow(a, self.p)
        }
    }

    pub fn in_prime_field(&self, a: Fe) -> bool {
        a[1] == 0
    }

    /// All elements, `x` fastest.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let p = self.p;
        let top = if self.e == 1 { 1 } else { p };
        (0..top).flat_map(move |y| (0..p).map(move |x| [x, y]))
    }

    pub fn random(&self, rng: &mut impl Rng) -> Fe {
        let y = if self.e == 1 { 0 } else { rng.gen_range(0..self.p) };
        [rng.gen_range(0..self.p), y]
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        match (self.e, a[1]) {
            (1, _) | (_, 0) => a[0].to_string(),
            (_, y) if a[0] == 0 => format!("{y}w"),
            (_, y) => format!("{}+{y}w", a[0]),
        }
    }
}

/// Polynomial over an [`Fq`], constant term first, trimmed (zero is `[0]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqPoly(pub Vec<Fe>);

impl FqPoly {
    pub fn new(mut c: Vec<Fe>) -> FqPoly {
        while c.len() > 1 && *c.last().unwrap() == [0, 0] {
            c.pop();
        }
        if c.is_empty() {
            c.push([0, 0]);
        }
        FqPoly(c)
    }

    pub fn from_ints(f: &Fq, c: &[i64]) -> FqPoly {
        FqPoly::new(c.iter().map(|&v| f.from_int(v)).collect())
    }

    pub fn x() -> FqPoly {
        FqPoly(vec![[0, 0], [1, 0]])
    }

    pub fn constant(a: Fe) -> FqPoly {
        FqPoly::new(vec![a])
    }

    pub fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0] == [0, 0]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [[1, 0]]
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn lead(&self) -> Fe {
        *self.0.last().unwrap()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn display(&self, f: &Fq) -> String {
        let parts: Vec<String> = self.0.iter().map(|&c| f.fmt_elem(c)).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|c| if c[1] == 0 { c[0].to_string() } else { format!("{}+{}w", c[0], c[1]) }).collect();
        write!(out, "[{}]", parts.join(","))
    }
}

/// Polynomial arithmetic over a fixed field.
impl Fq {
    pub fn padd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.0.len().max(b.0.len());
        let z = [0, 0];
        FqPoly::new((0..n).map(|i| self.add(*a.0.get(i).unwrap_or(&z), *b.0.get(i).unwrap_or(&z))).collect())
    }

    pub fn psub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.0.len().max(b.0.len());
        let z = [0, 0];
        FqPoly::new((0..n).map(|i| self.sub(*a.0.get(i).unwrap_or(&z), *b.0.get(i).unwrap_or(&z))).collect())
    }

    pub fn pmul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::new(vec![]);
        }
        let mut out = vec![[0, 0]; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        FqPoly::new(out)
    }

    pub fn pscale(&self, a: &FqPoly, c: Fe) -> FqPoly {
        FqPoly::new(a.0.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn pdivrem(&self, a: &FqPoly, m: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dm = m.degree();
        if a.degree() < dm || a.is_zero() {
            return Ok((FqPoly::new(vec![]), a.clone()));
        }
        let li = self.inv(m.lead())?;
        let mut r = a.0.clone();
        let mut q = vec![[0, 0]; a.degree() - dm + 1];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + dm], li);
            if !self.is_zero(c) {
                for j in 0..=dm {
                    r[i + j] = self.sub(r[i + j], self.mul(c, m.0[j]));
                }
            }
            q[i] = c;
        }
        r.truncate(dm.max(1));
        Ok((FqPoly::new(q), FqPoly::new(r)))
    }

    pub fn prem(&self, a: &FqPoly, m: &FqPoly) -> FqPoly {
        self.pdivrem(a, m).expect("nonzero modulus").1
    }

    /// Exact quotient; panics on a nonzero remainder only in debug builds.
    pub fn pdiv(&self, a: &FqPoly, m: &FqPoly) -> FqPoly {
        let (q, r) = self.pdivrem(a, m).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    pub fn pmonic(&self, a: &FqPoly) -> FqPoly {
        if a.is_zero() {
            return a.clone();
        }
        let li = self.inv(a.lead()).expect("nonzero lead");
        self.pscale(a, li)
    }

    pub fn pgcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.prem(&x, &y);
            x = y;
            y = r;
        }
        self.pmonic(&x)
    }

    pub fn pderiv(&self, a: &FqPoly) -> FqPoly {
        FqPoly::new(a.0.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, self.from_int(i as i64))).collect())
    }

    pub fn peval(&self, a: &FqPoly, x: Fe) -> Fe {
        a.0.iter().rev().fold([0, 0], |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn ppowmod(&self, base: &FqPoly, e: &BigUint, m: &FqPoly) -> FqPoly {
        let mut acc = FqPoly::constant(self.one());
        let b = self.prem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.prem(&self.pmul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.prem(&self.pmul(&acc, &b), m);
            }
        }
        self.prem(&acc, m)
    }

    /// Applies the Frobenius to every coefficient.
    pub fn pconj(&self, a: &FqPoly) -> FqPoly {
        FqPoly::new(a.0.iter().map(|&c| self.frobenius(c)).collect())
    }

    fn pth_root(&self, a: &FqPoly) -> FqPoly {
        // a(x) = b(x^p) and c^(1/p) = c^(q/p)
        let k = self.order() / self.p;
        FqPoly::new(a.0.iter().step_by(self.p as usize).map(|&c| self.pow(c, k)).collect())
    }

    fn ppow(&self, a: &FqPoly, k: u32) -> FqPoly {
        (0..k).fold(FqPoly::constant(self.one()), |acc, _| self.pmul(&acc, a))
    }
}

/// Monic irreducible factors with multiplicity, times a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, f: &Fq) -> FqPoly {
        self.factors.iter().fold(FqPoly::constant(self.unit), |acc, (g, m)| f.pmul(&acc, &f.ppow(g, *m)))
    }

    /// Factor degrees with multiplicity, descending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> =
            self.factors.iter().flat_map(|(g, m)| std::iter::repeat_n(g.degree(), *m as usize)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }
}

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_0004;

/// Squarefree decomposition, distinct-degree and equal-degree splitting.
/// Output factors are sorted by (degree, coefficients).
pub fn factor_poly(f: &Fq, a: &FqPoly, seed: u64) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::Input("cannot factor the zero polynomial".into()));
    }
    let unit = a.lead();
    let m = f.pmonic(a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sf, mult) in squarefree(f, &m) {
        for (g, d) in distinct_degree(f, &sf) {
            for h in equal_degree(f, &g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|x, y| (x.0.degree(), &x.0 .0).cmp(&(y.0.degree(), &y.0 .0)));
    // merge repeated factors from different squarefree layers
    let mut merged: Vec<(FqPoly, u32)> = Vec::new();
    for (g, k) in out {
        match merged.last_mut() {
            Some((h, j)) if *h == g => *j += k,
            _ => merged.push((g, k)),
        }
    }
    Ok(Factorization { unit, factors: merged })
}

fn squarefree(f: &Fq, a: &FqPoly) -> Vec<(FqPoly, u32)> {
    let mut out = Vec::new();
    if a.degree() == 0 {
        return out;
    }
    let d = f.pderiv(a);
    if d.is_zero() {
        let root = f.pth_root(a);
        for (g, m) in squarefree(f, &root) {
            out.push((g, m * f.p as u32));
        }
        return out;
    }
    let mut c = f.pgcd(a, &d);
    let mut w = f.pdiv(a, &c);
    let mut i = 1;
    while !w.is_one() {
        let y = f.pgcd(&w, &c);
        let fac = f.pdiv(&w, &y);
        if fac.degree() > 0 {
            out.push((fac, i));
        }
        i += 1;
        c = f.pdiv(&c, &y);
        w = y;
    }
    if c.degree() > 0 {
        let root = f.pth_root(&c);
        for (g, m) in squarefree(f, &root) {
            out.push((g, m * f.p as u32));
        }
    }
    out
}

fn distinct_degree(f: &Fq, a: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = a.clone();
    let x = FqPoly::x();
    let q = BigUint::from(f.order());
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree() >= 2 * i {
        h = f.ppowmod(&h, &q, &rest);
        let g = f.pgcd(&rest, &f.psub(&h, &x));
        if !g.is_one() {
            rest = f.pdiv(&rest, &g);
            h = f.prem(&h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &Fq, a: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = a.degree();
    if n == d {
        return vec![a.clone()];
    }
    let q = BigUint::from(f.order());
    loop {
        let r = FqPoly::new((0..n).map(|_| f.random(rng)).collect());
        if r.degree() == 0 {
            continue;
        }
        let b = if f.p == 2 {
            // trace from F_{q^d} down to F_2
            let steps = f.e as usize * d;
            let two = BigUint::from(2u32);
            let mut t = f.prem(&r, a);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = f.ppowmod(&t, &two, a);
                acc = f.padd(&acc, &t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            f.psub(&f.ppowmod(&r, &e, a), &FqPoly::constant(f.one()))
        };
        let g = f.pgcd(a, &b);
        if g.degree() > 0 && g.degree() < n {
            let h = f.pdiv(a, &g);
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Distinct roots of `a` in the field, by exhaustive evaluation (small fields only).
pub fn roots_by_scan(f: &Fq, a: &FqPoly) -> Vec<Fe> {
    f.elements().filter(|&x| f.is_zero(f.peval(a, x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f5 = Fq::prime(5).unwrap();
        let fa = factor_poly(&f5, &FqPoly::from_ints(&f5, &[1, 0, 1]), DEFAULT_SEED).unwrap();
        let got: Vec<String> = fa.factors.iter().map(|(g, _)| g.to_string()).collect();
        assert_eq!(got, ["[2,1]", "[3,1]"]);
        let f2 = Fq::prime(2).unwrap();
        assert_eq!(factor_poly(&f2, &FqPoly::from_ints(&f2, &[-1, -1, 0, 1]), 1).unwrap().degrees(), [3]);
        let f3 = Fq::prime(3).unwrap();
        assert_eq!(factor_poly(&f3, &FqPoly::from_ints(&f3, &[1, 0, 1]), 1).unwrap().degrees(), [2]);
    }

    #[test]
    fn quadratic_field_axioms() {
        assert!(Fq::quadratic(7, 6, 0).is_ok());
        assert!(Fq::quadratic(5, 4, 0).is_err());
        let f = Fq::quadratic(7, 6, 0).unwrap();
        for a in f.elements().filter(|&a| !f.is_zero(a)) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            assert_eq!(f.frobenius(f.frobenius(a)), a);
        }
    }

    #[test]
    fn char_two_extension() {
        let f = Fq::quadratic(2, 1, 1).unwrap();
        // x^4 + x over F_4 splits completely: x(x^3 + 1), F_4^* has order 3
        let a = FqPoly::from_ints(&f, &[0, 1, 0, 0, 1]);
        let fa = factor_poly(&f, &a, 3).unwrap();
        assert_eq!(fa.degrees(), [1, 1, 1, 1]);
        assert_eq!(fa.expand(&f), a);
        // squares survive
        let sq = f.pmul(&a, &a);
        assert_eq!(factor_poly(&f, &sq, 3).unwrap().expand(&f), sq);
    }
}
