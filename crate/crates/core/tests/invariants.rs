//! Randomised algebraic invariants.

use std::collections::BTreeMap;

use artinforge::chr::character_table;
use artinforge::corpus;
use artinforge::cyc::CycloNumber;
use artinforge::lfn::{dirichlet_expand, local_factor, EulerFactorPoly};
use artinforge::nt::poly::{cycle_type, discriminant, int_poly};
use artinforge::nt::{factor_poly, square_in_quadratic, Fq, FqPoly, QuadField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn cyclo(n: u32, c: &[i64]) -> CycloNumber {
    c.iter().enumerate().fold(CycloNumber::zero(n), |acc, (k, &v)| {
        &acc + &CycloNumber::root_of_unity(n, k as i64).scale_int(v)
    })
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 12, 15, 24])
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(n in conductor(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (x, y, z) = (cyclo(n, &a), cyclo(n, &b), cyclo(n, &c));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x * &y).galois(11), &x.galois(11) * &y.galois(11));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), CycloNumber::one(n));
        }
    }

    #[test]
    fn cyclotomic_promotion_is_transparent(a in coeffs(), b in coeffs()) {
        let (x, y) = (cyclo(4, &a), cyclo(6, &b));
        let big = &x.promote(12) * &y.promote(12);
        prop_assert_eq!(big.minimal_conductor(), (&x * &y).minimal_conductor());
    }

    #[test]
    fn factorization_multiplies_back(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
        ext in any::<bool>(),
        c in prop::collection::vec(0i64..50, 2..10),
        seed in any::<u64>(),
    ) {
        // x^2 - x - 1 is irreducible mod 2, 3, 7, 13; x^2 - 2 mod 5
        let f = match (ext, p) {
            (false, _) => Fq::prime(p).unwrap(),
            (true, 5) => Fq::quadratic(5, 2, 0).unwrap(),
            (true, _) => Fq::quadratic(p, 1, 1).unwrap(),
        };
        let a = FqPoly::from_ints(&f, &c);
        prop_assume!(a.degree() >= 1);
        let fac = factor_poly(&f, &a, seed).unwrap();
        prop_assert_eq!(fac.expand(&f), a);
        for (g, _) in &fac.factors {
            prop_assert!(g.lead() == f.one());
            if g.degree() <= 3 && g.degree() >= 2 {
                prop_assert!(f.elements().all(|x| !f.is_zero(f.peval(g, x))));
            }
        }
    }

    #[test]
    fn square_test_is_multiplicative(
        d in prop::sample::select(vec![-1i64, -3, -7, 2, 3, 5, -5, 13]),
        a in -30i64..30, b in -30i64..30, u in -30i64..30, v in -30i64..30,
    ) {
        let e = QuadField::new(d).unwrap();
        let x = e.from_int_coords(BigInt::from(a), BigInt::from(b));
        let y = e.from_int_coords(BigInt::from(u), BigInt::from(v));
        prop_assume!(!x.is_zero() && !y.is_zero());
        prop_assert!(square_in_quadratic(&x.mul(&x)));
        prop_assert_eq!(square_in_quadratic(&y.mul(&x.mul(&x))), square_in_quadratic(&y));
        // a square has a square norm in Q
        if square_in_quadratic(&y) {
            prop_assert!(artinforge::nt::quad::rational_sqrt(&y.norm()).is_some());
        }
    }

    #[test]
    fn cycle_type_invariant_under_shift(
        c in prop::collection::vec(-9i64..=9, 3..5),
        k in -5i64..=5,
        p in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19, 23]),
    ) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = int_poly(&coeffs);
        prop_assume!(!(discriminant(&f) % BigInt::from(p)).is_zero());
        // f(x + k) by Horner over the coefficients
        let n = f.len();
        let mut g = vec![BigInt::zero(); n];
        for coef in f.iter().rev() {
            let mut next = vec![BigInt::zero(); n];
            for i in 0..n - 1 {
                next[i + 1] += &g[i];
                next[i] += &g[i] * BigInt::from(k);
            }
            next[0] += coef;
            g = next;
        }
        prop_assert_eq!(cycle_type(&f, p).unwrap(), cycle_type(&g, p).unwrap());
        let total: usize = cycle_type(&f, p).unwrap().iter().sum();
        prop_assert_eq!(total, n - 1);
    }

    #[test]
    fn dirichlet_coefficients_multiplicative(
        a in prop::collection::vec(-3i64..=3, 1..4),
        b in prop::collection::vec(-3i64..=3, 1..4),
        m in 1usize..40, n in 1usize..40,
    ) {
        let mut factors = BTreeMap::new();
        for (i, &p) in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().enumerate() {
            let c = if i % 2 == 0 { &a } else { &b };
            let mut v = vec![1];
            v.extend_from_slice(c);
            factors.insert(p, EulerFactorPoly::from_ints(Some(p), &v));
        }
        let s = dirichlet_expand(&factors, &[], 1600).unwrap();
        prop_assert!(s.coeffs[1].is_one());
        if m.gcd(&n) == 1 {
            prop_assert_eq!(&s.coeffs[m * n], &(&s.coeffs[m] * &s.coeffs[n]));
        }
    }
}

#[test]
fn local_factor_is_additive() {
    for name in ["S4", "SL(2,3)", "Q8xS3", "GL(2,3)"] {
        let g = corpus::group(name).unwrap();
        let t = character_table(&g).unwrap();
        let irr = t.irreducibles();
        for (i, chi) in irr.iter().enumerate() {
            for psi in &irr[i..] {
                let sum = chi.add(psi).unwrap();
                for class in 0..chi.values().len() {
                    let whole = local_factor(&sum, class).unwrap();
                    let parts = local_factor(chi, class).unwrap().mul(&local_factor(psi, class).unwrap());
                    assert_eq!(whole, parts, "{name} class {class}");
                    assert_eq!(whole.coeffs[0], CycloNumber::one(1));
                }
            }
        }
    }
}
