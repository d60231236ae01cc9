//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element is stored in the power basis `1, z, .., z^(phi(n)-1)` modulo the
//! cyclotomic polynomial, as integer numerators over one common denominator.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Precomputed data for one conductor.
#[derive(Debug)]
pub struct CycloField {
    n: u32,
    phi: usize,
    /// Monic cyclotomic polynomial, constant term first.
    cyclo: Vec<i64>,
    /// `powers[k]` is `z^k` reduced to the power basis.
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    fn build(n: u32) -> CycloField {
        let cyclo = cyclotomic_polynomial(n as u64);
        let phi = cyclo.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by z
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(cyclo[i]).expect("cyclotomic overflow"))
                        .expect("cyclotomic overflow");
                }
            }
        }
        CycloField { n, phi, cyclo, powers }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Cyclotomic polynomial coefficients, constant term first.
    pub fn polynomial(&self) -> &[i64] {
        &self.cyclo
    }
}

fn registry() -> &'static RwLock<HashMap<u32, Arc<CycloField>>> {
    static REG: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared field data for conductor `n`.
pub fn field(n: u32) -> Arc<CycloField> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(f) = registry().read().unwrap().get(&n) {
        return f.clone();
    }
    let built = Arc::new(CycloField::build(n));
    registry().write().unwrap().entry(n).or_insert(built).clone()
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd] / lead;
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d for proper divisors d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl CycloNumber {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> CycloNumber {
        let mut x = CycloNumber { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(n: u32) -> CycloNumber {
        let f = field(n);
        let phi = f.phi;
        CycloNumber { field: f, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn from_rational(q: &BigRational, n: u32) -> CycloNumber {
        let mut x = CycloNumber::zero(n);
        x.num[0] = q.numer().clone();
        x.den = q.denom().clone();
        x.normalize();
        x
    }

    pub fn from_int(v: i64, n: u32) -> CycloNumber {
        let mut x = CycloNumber::zero(n);
        x.num[0] = BigInt::from(v);
        x
    }

    pub fn one(n: u32) -> CycloNumber {
        CycloNumber::from_int(1, n)
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> CycloNumber {
        let f = field(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let num = f.powers[idx].iter().map(|&c| BigInt::from(c)).collect();
        CycloNumber { field: f, num, den: BigInt::one() }
    }

    /// Builds `sum counts[k] * zeta_n^k` for an exponent-indexed vector.
    pub fn from_exponents(n: u32, counts: &[i64]) -> CycloNumber {
        let f = field(n);
        let mut acc = vec![0i64; f.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let row = &f.powers[k % n as usize];
            for i in 0..f.phi {
                acc[i] += c * row[i];
            }
        }
        CycloNumber { field: f, num: acc.into_iter().map(BigInt::from).collect(), den: BigInt::one() }
    }

    /// Builds an element from power-basis coefficients.
    pub fn from_coeffs(n: u32, coeffs: &[BigRational]) -> Result<CycloNumber> {
        let f = field(n);
        if coeffs.len() != f.phi {
            return Err(Error::Parse(format!(
                "conductor {n} needs {} coefficients, got {}",
                f.phi,
                coeffs.len()
            )));
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycloNumber::from_parts(f, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    /// Power-basis coefficients as rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn is_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The integer value, if the element is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        let q = self.is_rational()?;
        if q.is_integer() {
            Some(q.to_integer())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }

    pub fn is_algebraic_integer_coeffs(&self) -> bool {
        self.den.is_one()
    }

    /// Re-expresses the element in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn promote(&self, m: u32) -> CycloNumber {
        let n = self.field.n;
        if m == n {
            return self.clone();
        }
        assert!(m.is_multiple_of(n), "promote: {n} does not divide {m}");
        let step = (m / n) as usize;
        self.substitute(m, |i| i * step)
    }

    /// `sum c_i zeta_m^(map(i))` reduced in `Q(zeta_m)`.
    fn substitute(&self, m: u32, map: impl Fn(usize) -> usize) -> CycloNumber {
        let target = field(m);
        let mut acc = vec![BigInt::zero(); target.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &target.powers[map(i) % m as usize];
            for (a, &r) in acc.iter_mut().zip(row) {
                if r != 0 {
                    *a += c * r;
                }
            }
        }
        CycloNumber::from_parts(target, acc, self.den.clone())
    }

    /// Complex conjugation `zeta -> zeta^(n-1)`.
    pub fn conj(&self) -> CycloNumber {
        let n = self.field.n as usize;
        self.substitute(self.field.n, |i| (n - i % n) % n)
    }

    /// Galois action `zeta -> zeta^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> CycloNumber {
        let n = self.field.n as i64;
        assert!(k.gcd(&n) == 1, "galois: exponent not coprime to conductor");
        let k = k.rem_euclid(n) as usize;
        self.substitute(self.field.n, |i| i * k)
    }

    fn common(&self, other: &CycloNumber) -> (CycloNumber, CycloNumber) {
        if self.field.n == other.field.n {
            return (self.clone(), other.clone());
        }
        let m = (self.field.n as u64).lcm(&(other.field.n as u64)) as u32;
        (self.promote(m), other.promote(m))
    }

    fn add_same(&self, other: &CycloNumber, sign: i32) -> CycloNumber {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign > 0 { other.clone() } else { -other };
        }
        let num: Vec<BigInt> = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                .collect()
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if sign > 0 { a * &fa + b * &fb } else { a * &fa - b * &fb })
                .collect();
            return CycloNumber::from_parts(self.field.clone(), num, l);
        };
        CycloNumber::from_parts(self.field.clone(), num, self.den.clone())
    }

    fn mul_same(&self, other: &CycloNumber) -> CycloNumber {
        if let Some(q) = other.is_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.is_rational() {
            return other.scale(&q);
        }
        let f = &self.field;
        let phi = f.phi;
        let n = f.n as usize;
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut acc: Vec<BigInt> = raw[..phi].to_vec();
        for (k, c) in raw.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(&f.powers[k % n]) {
                if r != 0 {
                    *a += c * r;
                }
            }
        }
        CycloNumber::from_parts(f.clone(), acc, &self.den * &other.den)
    }

    pub fn scale(&self, q: &BigRational) -> CycloNumber {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloNumber::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: i64) -> CycloNumber {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn pow(&self, mut e: u64) -> CycloNumber {
        let mut base = self.clone();
        let mut acc = CycloNumber::one(self.field.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, via the extended gcd with the cyclotomic polynomial.
    pub fn inverse(&self) -> Result<CycloNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<BigRational> = self.coeffs();
        let m: Vec<BigRational> = self
            .field
            .cyclo
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let (g, s) = qpoly::ext_gcd(&a, &m);
        // g is a nonzero constant since Phi_n is irreducible.
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let mut coeffs: Vec<BigRational> = s.iter().map(|c| c * &inv_g).collect();
        coeffs.resize(self.field.phi, BigRational::zero());
        CycloNumber::from_coeffs(self.field.n, &coeffs)
    }

    pub fn div(&self, other: &CycloNumber) -> Result<CycloNumber> {
        Ok(self * &other.inverse()?)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = std::f64::consts::TAU * i as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Finds the same element inside `Q(zeta_d)` for a divisor `d` of the conductor.
    pub fn demote(&self, d: u32) -> Option<CycloNumber> {
        let n = self.field.n;
        if d == n {
            return Some(self.clone());
        }
        if !n.is_multiple_of(d) {
            return None;
        }
        let small = field(d);
        let step = (n / d) as usize;
        // Solve sum_j y_j * promote(zeta_d^j) = self over Q.
        let rows = self.field.phi;
        let cols = small.phi;
        let mut mat: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..cols)
                    .map(|j| {
                        let v = self.field.powers[(j * step) % n as usize][r];
                        BigRational::from_integer(BigInt::from(v))
                    })
                    .collect();
                row.push(BigRational::new(self.num[r].clone(), self.den.clone()));
                row
            })
            .collect();
        let sol = qpoly::solve_augmented(&mut mat, cols)?;
        let y = CycloNumber::from_coeffs(d, &sol).ok()?;
        if y.promote(n) == *self {
            Some(y)
        } else {
            None
        }
    }

    /// The same element written over the least conductor that contains it.
    pub fn minimal_conductor(&self) -> CycloNumber {
        let n = self.field.n;
        if self.is_rational().is_some() {
            return self.demote(1).unwrap_or_else(|| self.clone());
        }
        for d in 1..n {
            if n.is_multiple_of(d) {
                if let Some(y) = self.demote(d) {
                    return y;
                }
            }
        }
        self.clone()
    }

    /// Value at conductor `n` if representable there.
    pub fn at_conductor(&self, n: u32) -> Option<CycloNumber> {
        let c = self.field.n;
        if n.is_multiple_of(c) {
            Some(self.promote(n))
        } else {
            let g = (n as u64).gcd(&(c as u64)) as u32;
            self.demote(g).map(|y| y.promote(n))
        }
    }

    /// Lexicographic comparison of power-basis coefficients.
    pub fn cmp_canonical(&self, other: &CycloNumber) -> Ordering {
        let (a, b) = self.common(other);
        for (x, y) in a.num.iter().zip(&b.num) {
            let l = x * &b.den;
            let r = y * &a.den;
            match l.cmp(&r) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &CycloNumber) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.common(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNumber {}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        if self.field.n == rhs.field.n {
            self.add_same(rhs, 1)
        } else {
            let (a, b) = self.common(rhs);
            a.add_same(&b, 1)
        }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        if self.field.n == rhs.field.n {
            self.add_same(rhs, -1)
        } else {
            let (a, b) = self.common(rhs);
            a.add_same(&b, -1)
        }
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.field.n == rhs.field.n {
            self.mul_same(rhs)
        } else {
            let (a, b) = self.common(rhs);
            a.mul_same(&b)
        }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(fmt_rational).collect();
        write!(f, "({}) @ zeta_{}", parts.join(", "), self.field.n)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(p, q))
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}

impl FromStr for CycloNumber {
    type Err = Error;

    /// Parses `(c0, c1, ..) @ zeta_n`; a bare rational is read at conductor 1.
    fn from_str(s: &str) -> Result<CycloNumber> {
        let s = s.trim();
        let Some((body, cond)) = s.split_once('@') else {
            let q = parse_rational(s)?;
            return Ok(CycloNumber::from_rational(&q, 1));
        };
        let cond = cond.trim();
        let n: u32 = cond
            .strip_prefix("zeta_")
            .and_then(|t| t.trim().parse().ok())
            .filter(|&n: &u32| n >= 1)
            .ok_or_else(|| Error::Parse(format!("bad conductor `{cond}`")))?;
        let body = body.trim();
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected parenthesised coefficients in `{s}`")))?;
        let coeffs = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        CycloNumber::from_coeffs(n, &coeffs)
    }
}

/// Dense polynomial helpers over `Q`, constant term first.
pub(crate) mod qpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![BigRational::zero()], r);
        }
        let lead = b.last().unwrap().clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[i + j] = &r[i + j] - &c * bj;
                }
            }
            q[i] = c;
        }
        r.truncate(db.max(1));
        trim(&mut r);
        (q, r)
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + x * y;
            }
        }
        out
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] = &out[i] + x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] = &out[i] - x;
        }
        trim(&mut out);
        out
    }

    fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(|c| c.is_zero())
    }

    /// Returns `(g, s)` with `s*a == g (mod m)`.
    pub fn ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::from_integer(1.into())];
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        trim(&mut r0);
        let (_, s) = divrem(&s0, m);
        (r0, s)
    }

    /// Solves an augmented system with `cols` unknowns; `None` if inconsistent.
    pub fn solve_augmented(mat: &mut [Vec<BigRational>], cols: usize) -> Option<Vec<BigRational>> {
        let rows = mat.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
                continue;
            };
            mat.swap(r, p);
            let inv = mat[r][c].recip();
            for x in mat[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows {
                if i != r && !mat[i][c].is_zero() {
                    let f = mat[i][c].clone();
                    for j in 0..=cols {
                        let v = &mat[r][j] * &f;
                        mat[i][j] = &mat[i][j] - v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if mat[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut sol = vec![BigRational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            sol[c] = mat[i][cols].clone();
        }
        Some(sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn zeta3_relation() {
        let z = CycloNumber::root_of_unity(3, 1);
        let s = &(&CycloNumber::one(3) + &z) + &(&z * &z);
        assert!(s.is_zero());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycloNumber::root_of_unity(4, 1);
        assert_eq!((&i * &i).is_rational(), Some(q(-1, 1)));
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let z = CycloNumber::root_of_unity(5, 1);
        let x = &CycloNumber::one(5) + &z;
        let y = x.inverse().unwrap();
        assert_eq!((&x * &y).is_rational(), Some(q(1, 1)));
    }

    #[test]
    fn promotion_equality() {
        let a = CycloNumber::root_of_unity(4, 1);
        let b = CycloNumber::root_of_unity(12, 3);
        assert_eq!(a, b);
        assert_eq!(a.promote(12), b);
        let half = CycloNumber::from_rational(&q(1, 2), 1);
        assert_eq!(half.promote(7).is_rational(), Some(q(1, 2)));
    }

    #[test]
    fn demote_back() {
        let i = CycloNumber::root_of_unity(4, 1);
        let big = i.promote(24);
        assert_eq!(big.demote(4).unwrap().coeffs(), i.coeffs());
        assert!(CycloNumber::root_of_unity(8, 1).demote(4).is_none());
        assert_eq!(big.minimal_conductor().conductor(), 4);
    }

    #[test]
    fn conjugation() {
        let z = CycloNumber::root_of_unity(7, 2);
        assert_eq!(z.conj(), CycloNumber::root_of_unity(7, 5));
        assert_eq!(&z * &z.conj(), CycloNumber::one(7));
    }

    #[test]
    fn text_round_trip() {
        let x: CycloNumber = "(1/2, -3, 0, 7/5) @ zeta_5".parse().unwrap();
        assert_eq!(x.to_string(), "(1/2, -3, 0, 7/5) @ zeta_5");
        let y: CycloNumber = x.to_string().parse().unwrap();
        assert_eq!(x, y);
        assert!("(1, 2) @ zeta_5".parse::<CycloNumber>().is_err());
        assert!("(1, 2".parse::<CycloNumber>().is_err());
    }

    #[test]
    fn complex_embedding() {
        let z = CycloNumber::root_of_unity(8, 1);
        let (re, im) = z.to_complex();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-12 && (im - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sqrt_minus_two_in_zeta8() {
        // zeta8 + zeta8^3 squares to -2.
        let s = CycloNumber::root_of_unity(8, 1) + CycloNumber::root_of_unity(8, 3);
        assert_eq!((&s * &s).is_rational(), Some(q(-2, 1)));
    }
}
