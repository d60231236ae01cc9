//! Integer polynomials: discriminants, resolvent cubics, Frobenius cycle types
//! and Galois groups of quartics over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fq::{factor_poly, Fq, FqPoly, DEFAULT_SEED};
use super::quad::{rational_sqrt, QuadInt};
use crate::error::{Error, Result};

/// Monic-or-not polynomial over Z, constant term first.
pub type IntPoly = Vec<BigInt>;

pub fn int_poly(c: &[i64]) -> IntPoly {
    c.iter().map(|&v| BigInt::from(v)).collect()
}

/// Parses `"c0,c1,...,cn"`; a leading unicode minus is accepted.
pub fn parse_int_poly(s: &str) -> Result<IntPoly> {
    let out: Result<IntPoly> = s
        .split(',')
        .map(|t| {
            let t = t.trim().replace('\u{2212}', "-");
            t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
        })
        .collect();
    let mut out = out?;
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    if out.len() < 2 {
        return Err(Error::Parse("polynomial must have degree at least 1".into()));
    }
    Ok(out)
}

pub fn format_poly<T: fmt::Display>(c: &[T]) -> String {
    c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// The commutative-ring operations used by the closed discriminant formulas.
pub trait Ring: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn small(&self, k: i64) -> Self;
}

impl Ring for BigInt {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn small(&self, k: i64) -> Self {
        BigInt::from(k)
    }
}

impl Ring for QuadInt {
    fn add(&self, o: &Self) -> Self {
        QuadInt::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QuadInt::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QuadInt::mul(self, o)
    }
    fn small(&self, k: i64) -> Self {
        QuadInt::new(self.d(), BigRational::from_integer(k.into()), BigRational::zero())
    }
}

/// Sum of `k * prod(factors)` terms.
fn combo<R: Ring>(terms: &[(i64, &[&R])]) -> R {
    let z = terms[0].1[0].small(0);
    terms.iter().fold(z.clone(), |acc, (k, fs)| {
        let prod = fs.iter().fold(z.small(*k), |p, f| p.mul(f));
        acc.add(&prod)
    })
}

/// Closed-form discriminant for degrees 2, 3 and 4 over any commutative ring.
pub fn discriminant_small<R: Ring>(c: &[R]) -> Result<R> {
    match c.len() {
        3 => {
            let (c0, b, a) = (&c[0], &c[1], &c[2]);
            Ok(combo(&[(1, &[b, b]), (-4, &[a, c0])]))
        }
        4 => {
            let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
            Ok(combo(&[
                (1, &[b, b, cc, cc]),
                (-4, &[a, cc, cc, cc]),
                (-4, &[b, b, b, d]),
                (-27, &[a, a, d, d]),
                (18, &[a, b, cc, d]),
            ]))
        }
        5 => {
            let (e, d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
            Ok(combo(&[
                (256, &[a, a, a, e, e, e]),
                (-192, &[a, a, b, d, e, e]),
                (-128, &[a, a, cc, cc, e, e]),
                (144, &[a, a, cc, d, d, e]),
                (-27, &[a, a, d, d, d, d]),
                (144, &[a, b, b, cc, e, e]),
                (-6, &[a, b, b, d, d, e]),
                (-80, &[a, b, cc, cc, d, e]),
                (18, &[a, b, cc, d, d, d]),
                (16, &[a, cc, cc, cc, cc, e]),
                (-4, &[a, cc, cc, cc, d, d]),
                (-27, &[b, b, b, b, e, e]),
                (18, &[b, b, b, cc, d, e]),
                (-4, &[b, b, b, d, d, d]),
                (-4, &[b, b, cc, cc, cc, e]),
                (1, &[b, b, cc, cc, d, d]),
            ]))
        }
        n => Err(Error::Input(format!("closed formula covers degrees 2..4, got {}", n - 1))),
    }
}

/// `det` by fraction-free elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    bareiss(rows)
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lead(f)` for any degree.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let df: IntPoly = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let r = resultant(f, &df) / f.last().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Resolvent cubic with roots `x1 x2 + x3 x4` etc. of a monic quartic.
pub fn resolvent_cubic<R: Ring>(f: &[R]) -> Result<Vec<R>> {
    if f.len() != 5 {
        return Err(Error::Input("resolvent cubic needs a quartic".into()));
    }
    let (e, d, c, b) = (&f[0], &f[1], &f[2], &f[3]);
    // y^3 - c y^2 + (bd - 4e) y - (b^2 e - 4 c e + d^2)
    let one = e.small(1);
    let c2 = e.small(0).sub(c);
    let c1 = b.mul(d).sub(&e.small(4).mul(e));
    let c0 = e.small(0).sub(&b.mul(b).mul(e).sub(&e.small(4).mul(c).mul(e)).add(&d.mul(d)));
    Ok(vec![c0, c1, c2, one])
}

pub fn reduce_mod(f: &[BigInt], fq: &Fq) -> FqPoly {
    let p = BigInt::from(fq.characteristic());
    FqPoly::new(f.iter().map(|c| [c.mod_floor(&p).to_u64().unwrap(), 0]).collect())
}

/// Factor degrees of `f mod p`, descending; fails when `p` divides the discriminant or the leading coefficient.
pub fn cycle_type(f: &[BigInt], p: u64) -> Result<Vec<usize>> {
    let fq = Fq::prime(p)?;
    let r = reduce_mod(f, &fq);
    if r.degree() != f.len() - 1 || !fq.pgcd(&r, &fq.pderiv(&r)).is_one() {
        return Err(Error::Precondition(format!("p={p} is ramified (divides the discriminant)")));
    }
    Ok(factor_poly(&fq, &r, DEFAULT_SEED)?.degrees())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(-&d);
            let q = &n / &d;
            if q != d {
                out.push(q.clone());
                out.push(-q);
            }
        }
        d += 1;
    }
    out
}

fn eval(f: &[BigInt], x: &BigRational) -> BigRational {
    f.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Integer roots of a monic polynomial.
pub fn integer_roots(f: &[BigInt]) -> Vec<BigInt> {
    if f[0].is_zero() {
        let mut r = integer_roots(&f[1..]);
        if !r.contains(&BigInt::zero()) {
            r.push(BigInt::zero());
        }
        return r;
    }
    let mut r: Vec<BigInt> =
        divisors(&f[0]).into_iter().filter(|d| eval(f, &BigRational::from_integer(d.clone())).is_zero()).collect();
    r.sort();
    r
}

/// Whether a monic integer quartic splits as a product of two monic integer quadratics.
fn has_quadratic_factor(f: &[BigInt]) -> bool {
    let (e, d, c, b) = (&f[0], &f[1], &f[2], &f[3]);
    if e.is_zero() {
        return true;
    }
    // (x^2 + s x + u)(x^2 + t x + v): u v = e, s + t = b, s t + u + v = c, s v + t u = d
    for u in divisors(e) {
        let v = e / &u;
        if u == v {
            // s t = c - 2u, s + t = b
            let disc = b * b - BigInt::from(4) * (c - &u - &v);
            if let Some(r) = rational_sqrt(&BigRational::from_integer(disc)) {
                if r.is_integer() && (b + r.to_integer()).is_even() && d == &(b * &u) {
                    return true;
                }
            }
            continue;
        }
        // s (v - u) = d - b u
        let num = d - b * &u;
        let den = &v - &u;
        if !(&num % &den).is_zero() {
            continue;
        }
        let s = &num / &den;
        let t = b - &s;
        if &s * &t + &u + &v == *c {
            return true;
        }
    }
    false
}

/// Exact irreducibility over Q of a monic integer polynomial of degree at most 4.
pub fn is_irreducible_small(f: &[BigInt]) -> Result<bool> {
    if !f.last().unwrap().is_one() {
        return Err(Error::Input("polynomial must be monic".into()));
    }
    let n = f.len() - 1;
    if n > 4 {
        return Err(Error::Input("exact irreducibility test covers degree at most 4".into()));
    }
    if n == 1 {
        return Ok(true);
    }
    if !integer_roots(f).is_empty() {
        return Ok(false);
    }
    Ok(n < 4 || !has_quadratic_factor(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuarticGroup {
    S4,
    A4,
    D4,
    C4,
    V,
}

impl fmt::Display for QuarticGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuarticGroup::S4 => "S4",
            QuarticGroup::A4 => "A4",
            QuarticGroup::D4 => "D4",
            QuarticGroup::C4 => "C4",
            QuarticGroup::V => "V",
        };
        f.write_str(s)
    }
}

fn is_int_square(n: &BigInt) -> bool {
    rational_sqrt(&BigRational::from_integer(n.clone())).is_some()
}

/// Galois group of an irreducible monic integer quartic, via the resolvent cubic.
pub fn quartic_galois_over_q(f: &[BigInt]) -> Result<QuarticGroup> {
    if f.len() != 5 {
        return Err(Error::Input("need a quartic".into()));
    }
    if !is_irreducible_small(f)? {
        return Err(Error::Input(format!("{} is reducible over Q", format_poly(f))));
    }
    let disc = discriminant_small(f)?;
    let square = is_int_square(&disc);
    let r = resolvent_cubic(f)?;
    let roots = integer_roots(&r);
    Ok(match roots.len() {
        0 if square => QuarticGroup::A4,
        0 => QuarticGroup::S4,
        1 => {
            // C4 iff x^2 - r x + e and x^2 + b x + (c - r) both split over Q(sqrt disc)
            let root = &roots[0];
            let (e, c, b) = (&f[0], &f[2], &f[3]);
            let splits = |qd: BigInt| qd.is_zero() || is_int_square(&qd) || is_int_square(&(&qd * &disc));
            let q1 = root * root - BigInt::from(4) * e;
            let q2 = b * b - BigInt::from(4) * (c - root);
            if splits(q1) && splits(q2) {
                QuarticGroup::C4
            } else {
                QuarticGroup::D4
            }
        }
        _ => QuarticGroup::V,
    })
}

/// `S3` or `A3` for an irreducible monic cubic.
pub fn cubic_galois_is_symmetric(f: &[BigInt]) -> Result<bool> {
    if f.len() != 4 || !is_irreducible_small(f)? {
        return Err(Error::Input("need an irreducible monic cubic".into()));
    }
    Ok(!is_int_square(&discriminant_small(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant_small(&int_poly(&[-1, -1, 0, 0, 1])).unwrap(), BigInt::from(-283));
        assert_eq!(discriminant_small(&int_poly(&[-1, -1, 0, 1])).unwrap(), BigInt::from(-23));
        assert_eq!(discriminant(&int_poly(&[-1, -1, 0, 0, 1])), BigInt::from(-283));
        assert_eq!(discriminant(&int_poly(&[-1, -1, 0, 1])), BigInt::from(-23));
        assert_eq!(resolvent_cubic(&int_poly(&[-1, -1, 0, 0, 1])).unwrap(), int_poly(&[-1, 4, 0, 1]));
    }

    #[test]
    fn cycle_type_examples() {
        let f = int_poly(&[-1, -1, 0, 1]);
        assert_eq!(cycle_type(&f, 2).unwrap(), [3]);
        assert_eq!(cycle_type(&f, 5).unwrap(), [2, 1]);
        assert!(matches!(cycle_type(&f, 23), Err(Error::Precondition(_))));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(quartic_galois_over_q(&int_poly(&[-1, -1, 0, 0, 1])).unwrap(), QuarticGroup::S4);
        assert_eq!(quartic_galois_over_q(&int_poly(&[1, 0, 0, 0, 1])).unwrap(), QuarticGroup::V);
        assert_eq!(quartic_galois_over_q(&int_poly(&[1, 1, 1, 1, 1])).unwrap(), QuarticGroup::C4);
        assert_eq!(quartic_galois_over_q(&int_poly(&[-2, 0, 0, 0, 1])).unwrap(), QuarticGroup::D4);
        // x^4 + 8x + 12 has group A4
        assert_eq!(quartic_galois_over_q(&int_poly(&[12, 8, 0, 0, 1])).unwrap(), QuarticGroup::A4);
        // (x^2+1)(x^2+2) and x(x^3+1) are rejected
        assert!(quartic_galois_over_q(&int_poly(&[2, 0, 3, 0, 1])).is_err());
        assert!(quartic_galois_over_q(&int_poly(&[0, 1, 0, 0, 1])).is_err());
    }
}
