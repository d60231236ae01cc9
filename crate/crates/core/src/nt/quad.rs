//! Quadratic fields `Q(sqrt d)` and their elements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fq::{Fe, Fq};
use crate::error::{Error, Result};
use crate::modp::{factorize, is_prime, pow_mod};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<QuadField> {
        if d == 0 || d == 1 || factorize(d.unsigned_abs()).iter().any(|&(_, e)| e > 1) {
            return Err(Error::Input(format!("{d} is not a squarefree integer other than 0, 1")));
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Whether the ring of integers has basis `1, (1 + sqrt d)/2`.
    pub fn omega_basis(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    pub fn discriminant(&self) -> i64 {
        if self.omega_basis() {
            self.d
        } else {
            4 * self.d
        }
    }

    pub fn int(&self, a: i64) -> QuadInt {
        QuadInt::new(self.d, BigRational::from_integer(a.into()), BigRational::zero())
    }

    pub fn from_int(&self, a: BigInt) -> QuadInt {
        QuadInt::new(self.d, BigRational::from_integer(a), BigRational::zero())
    }

    pub fn sqrt_d(&self) -> QuadInt {
        QuadInt::new(self.d, BigRational::zero(), BigRational::one())
    }

    /// `x + y w` with `w` the second integral basis element.
    pub fn from_int_coords(&self, x: BigInt, y: BigInt) -> QuadInt {
        if self.omega_basis() {
            // x + y (1 + s)/2
            let two = BigInt::from(2);
            QuadInt::new(
                self.d,
                BigRational::new(&x * &two + &y, two.clone()),
                BigRational::new(y, two),
            )
        } else {
            QuadInt::new(self.d, BigRational::from_integer(x), BigRational::from_integer(y))
        }
    }

    /// The residue field `O_E / p` for an inert odd or even prime, generated by the image of `w`.
    pub fn residue_field(&self, p: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if kronecker(self.discriminant(), p) != -1 {
            return Err(Error::Precondition(format!("{p} is not inert in Q(sqrt {})", self.d)));
        }
        let pm = p as i64;
        if self.omega_basis() {
            // w^2 = w + (d - 1)/4
            Fq::quadratic(p, ((self.d - 1) / 4).rem_euclid(pm) as u64, 1)
        } else {
            Fq::quadratic(p, self.d.rem_euclid(pm) as u64, 0)
        }
    }

    /// Images of `w` in `F_p` for a split prime, one per prime above `p`.
    pub fn split_embeddings(&self, p: u64) -> Result<Vec<u64>> {
        if kronecker(self.discriminant(), p) != 1 {
            return Err(Error::Precondition(format!("{p} does not split in Q(sqrt {})", self.d)));
        }
        let pm = p as i64;
        let f: Vec<u64> = if self.omega_basis() {
            vec![(-(self.d - 1) / 4).rem_euclid(pm) as u64, p - 1, 1]
        } else {
            vec![(-self.d).rem_euclid(pm) as u64, 0, 1]
        };
        Ok(crate::modp::poly::roots(&f, p))
    }

    /// Rational primes up to `bound` that are inert, by the Kronecker symbol.
    pub fn inert_primes(&self, bound: u64) -> Vec<u64> {
        let disc = self.discriminant();
        crate::modp::primes_up_to(bound).into_iter().filter(|&p| kronecker(disc, p) == -1).collect()
    }
}

/// Kronecker symbol `(D/p)` for a prime `p`.
pub fn kronecker(disc: i64, p: u64) -> i32 {
    if p == 2 {
        if disc % 2 == 0 {
            return 0;
        }
        return if matches!(disc.rem_euclid(8), 1 | 7) { 1 } else { -1 };
    }
    let a = disc.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `a + b sqrt d` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    d: i64,
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadInt {
    pub fn new(d: i64, a: BigRational, b: BigRational) -> QuadInt {
        QuadInt { d, a, b }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn zero_in(d: i64) -> QuadInt {
        QuadInt::new(d, BigRational::zero(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.d, o.d);
        QuadInt::new(self.d, &self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(self.d, &self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt::new(self.d, -&self.a, -&self.b)
    }

    pub fn mul(&self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.d, o.d);
        let d = BigRational::from_integer(self.d.into());
        QuadInt::new(self.d, &self.a * &o.a + &d * &self.b * &o.b, &self.a * &o.b + &self.b * &o.a)
    }

    pub fn scale(&self, k: &BigRational) -> QuadInt {
        QuadInt::new(self.d, &self.a * k, &self.b * k)
    }

    /// The non-trivial automorphism.
    pub fn conj(&self) -> QuadInt {
        QuadInt::new(self.d, self.a.clone(), -&self.b)
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn inv(&self) -> Result<QuadInt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn div(&self, o: &QuadInt) -> Result<QuadInt> {
        Ok(self.mul(&o.inv()?))
    }

    /// Coordinates in the integral basis, if integral.
    pub fn int_coords(&self) -> Option<(BigInt, BigInt)> {
        if self.d.rem_euclid(4) == 1 {
            let y = &self.b + &self.b;
            let x = &self.a - &self.b;
            (y.is_integer() && x.is_integer()).then(|| (x.to_integer(), y.to_integer()))
        } else {
            (self.a.is_integer() && self.b.is_integer()).then(|| (self.a.to_integer(), self.b.to_integer()))
        }
    }

    pub fn is_integral(&self) -> bool {
        self.int_coords().is_some()
    }

    /// Image in a residue field built by [`QuadField::residue_field`] (inert) or `F_p` with `w -> w0` (split).
    pub fn reduce(&self, f: &Fq, w0: Option<u64>) -> Result<Fe> {
        let (x, y) = self.int_coords().ok_or_else(|| Error::Input(format!("{self} is not integral")))?;
        let p = BigInt::from(f.characteristic());
        let r = |v: &BigInt| v.mod_floor(&p).to_u64().unwrap();
        match w0 {
            None => Ok([r(&x), r(&y)]),
            Some(w) => {
                let pp = f.characteristic();
                Ok([(r(&x) + r(&y) * w % pp) % pp, 0])
            }
        }
    }

    pub fn is_square(&self) -> bool {
        square_in_quadratic(self)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(out, "{}", self.a)
        } else if self.a.is_zero() {
            write!(out, "{}*s", self.b)
        } else if self.b.is_negative() {
            write!(out, "{}-{}*s", self.a, -&self.b)
        } else {
            write!(out, "{}+{}*s", self.a, self.b)
        }
    }
}

/// Square root of a non-negative rational square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Exact square test in `Q(sqrt d)` by solving `s^2 + d t^2 = a`, `2 s t = b`.
pub fn square_in_quadratic(x: &QuadInt) -> bool {
    square_root(x).is_some()
}

/// A square root in the same field, if one exists.
pub fn square_root(x: &QuadInt) -> Option<QuadInt> {
    let d = BigRational::from_integer(x.d.into());
    if x.b.is_zero() {
        if let Some(s) = rational_sqrt(&x.a) {
            return Some(QuadInt::new(x.d, s, BigRational::zero()));
        }
        let t = rational_sqrt(&(&x.a / &d))?;
        return Some(QuadInt::new(x.d, BigRational::zero(), t));
    }
    // s^2 - d t^2 = +-sqrt(N(x)), so s^2 = (a +- n)/2
    let n = rational_sqrt(&x.norm())?;
    let two = BigRational::from_integer(2.into());
    for cand in [(&x.a + &n) / &two, (&x.a - &n) / &two] {
        if let Some(s) = rational_sqrt(&cand) {
            if s.is_zero() {
                continue;
            }
            let t = &x.b / (&two * &s);
            let r = QuadInt::new(x.d, s, t);
            if r.mul(&r) == *x {
                return Some(r);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: i64) -> QuadInt {
        QuadInt::new(d, BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    #[test]
    fn examples() {
        let e = QuadField::new(-1).unwrap();
        assert_eq!(e.inert_primes(20), [3, 7, 11, 19]);
        assert!(square_in_quadratic(&q(3, 2, 2)));
        assert!(!square_in_quadratic(&q(3, 0, 2)));
        assert!(square_in_quadratic(&q(2, 0, 2)));
        assert!(square_in_quadratic(&q(-1, 0, -1)));
        assert!(QuadField::new(12).is_err());
    }

    #[test]
    fn omega_coordinates_round_trip() {
        let e = QuadField::new(5).unwrap();
        let x = e.from_int_coords(3.into(), 7.into());
        assert_eq!(x.int_coords(), Some((3.into(), 7.into())));
        assert!(!QuadInt::new(5, BigRational::new(1.into(), 2.into()), BigRational::zero()).is_integral());
        // 2 is inert in Q(sqrt 5)
        assert_eq!(e.inert_primes(10), [2, 3, 7]);
        assert!(e.residue_field(2).is_ok());
    }
}
