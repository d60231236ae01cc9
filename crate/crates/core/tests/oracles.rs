//! Independent brute-force oracles against the library, plus a few frozen values.

use std::collections::BTreeSet;

use artinforge::chr::character_table;
use artinforge::corpus;
use artinforge::grp::Subgroup;
use artinforge::lfn::{dedekind_local, two_generated_subgroups};
use artinforge::nt::poly::{cycle_type, int_poly};
use artinforge::ogo::{double_cover_s4, CoverKind};

fn commuting_pairs(g: &artinforge::grp::Group) -> usize {
    let n = g.order();
    (0..n).map(|x| (0..n).filter(|&y| g.product(x, y) == g.product(y, x)).count()).sum()
}

#[test]
fn class_numbers_from_commuting_pairs() {
    for g in corpus::all().unwrap() {
        // #{(x, y) : xy = yx} = k(G) |G|
        let k = commuting_pairs(&g) / g.order();
        assert_eq!(g.classes().len(), k, "{}", g.label());
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), k);
        let sum: i64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum as usize, g.order(), "{}", g.label());
    }
}

/// Factor degrees of a monic integer polynomial mod p from root counts over F_p and F_{p^2}.
fn degrees_by_counting(c: &[i64], p: i64) -> Vec<usize> {
    let eval = |x: i64| c.iter().rev().fold(0i64, |acc, &a| (acc * x + a).rem_euclid(p));
    let linear = (0..p).filter(|&x| eval(x) == 0).count();
    // irreducible monic quadratics dividing f, found by trial division
    let n = c.len() - 1;
    let mut quad = 0;
    for a in 0..p {
        for b in 0..p {
            if (0..p).any(|x| (x * x + a * x + b).rem_euclid(p) == 0) {
                continue;
            }
            let mut r: Vec<i64> = c.iter().map(|v| v.rem_euclid(p)).collect();
            for i in (2..=n).rev() {
                let q = r[i];
                r[i] = 0;
                r[i - 1] = (r[i - 1] - q * a).rem_euclid(p);
                r[i - 2] = (r[i - 2] - q * b).rem_euclid(p);
            }
            if r.iter().all(|&v| v == 0) {
                quad += 1;
            }
        }
    }
    let mut d = vec![1; linear];
    d.extend(std::iter::repeat_n(2, quad));
    let rest = n - linear - 2 * quad;
    if rest > 0 {
        d.push(rest);
    }
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

#[test]
fn cycle_types_against_counting() {
    for (c, disc) in [(&[-1i64, -1, 0, 1][..], 23u64), (&[-1, -1, 0, 0, 1], 283)] {
        let f = int_poly(c);
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 29, 31, 37, 43, 59, 61, 97, 101] {
            if p == disc {
                continue;
            }
            let want = degrees_by_counting(c, p as i64);
            assert_eq!(cycle_type(&f, p).unwrap(), want, "{c:?} mod {p}");
            // zeta_N local factor is prod (1 - T^d)
            let local = dedekind_local(&f, p).unwrap();
            let mut expect = vec![1i64];
            for d in &want {
                let mut next = vec![0; expect.len() + d];
                for (i, &v) in expect.iter().enumerate() {
                    next[i] += v;
                    next[i + d] -= v;
                }
                expect = next;
            }
            let got: Vec<i64> = local.integer_coeffs().unwrap().iter().map(|v| i64::try_from(v).unwrap()).collect();
            assert_eq!(got, expect, "{c:?} at {p}");
        }
    }
}

#[test]
fn first_totally_split_primes() {
    let first_split = |c: &[i64]| {
        let f = int_poly(c);
        (2u64..).filter(|&p| artinforge::modp::is_prime(p)).find(|&p| {
            cycle_type(&f, p).is_ok_and(|t| t.iter().all(|&d| d == 1))
        })
    };
    assert_eq!(first_split(&[-1, -1, 0, 1]), Some(59));
    assert_eq!(first_split(&[-1, -1, 0, 0, 1]), Some(83));
}

fn orbit_of_zero(s: &Subgroup) -> BTreeSet<u16> {
    let g = s.parent();
    s.members().iter().map(|&x| g.permutation(x).unwrap()[0]).collect()
}

#[test]
fn transposition_and_three_cycle_generate_s4() {
    let s4 = corpus::group("S4").unwrap();
    let cycle_shape = |x: usize| {
        let p = s4.permutation(x).unwrap();
        let moved = p.iter().enumerate().filter(|&(i, &v)| i != v as usize).count();
        (s4.element_order(x), moved)
    };
    let subgroups = two_generated_subgroups(&s4);
    let mut normal_orders = BTreeSet::new();
    for h in &subgroups {
        let transitive = orbit_of_zero(h).len() == 4;
        let has_transposition = h.members().iter().any(|&x| cycle_shape(x) == (2, 2));
        let has_three_cycle = h.members().iter().any(|&x| cycle_shape(x) == (3, 3));
        if transitive && has_transposition && has_three_cycle {
            assert_eq!(h.order(), 24);
        }
        if h.is_normal() {
            normal_orders.insert(h.order());
        }
    }
    assert_eq!(normal_orders.into_iter().collect::<Vec<_>>(), vec![1, 4, 12, 24]);
}

#[test]
fn double_covers() {
    let sl23 = corpus::group("SL(2,3)").unwrap();
    let mut sl_sizes = sl23.classes().sizes().to_vec();
    sl_sizes.sort_unstable();
    for (kind, lift) in [(CoverKind::Tilde, 2), (CoverKind::Hat, 4)] {
        let c = double_cover_s4(kind).unwrap();
        assert_eq!(c.transposition_lift_order, lift);
        // the preimage of A4 is the derived subgroup, and is SL(2,3) up to class data
        let d = c.group.whole().derived();
        assert_eq!(d.order(), 24);
        let sub = d.embed();
        let mut orders: Vec<usize> = sub.group.classes().rep_orders().to_vec();
        let mut sizes = sub.group.classes().sizes().to_vec();
        orders.sort_unstable();
        sizes.sort_unstable();
        let mut sl_orders = sl23.classes().rep_orders().to_vec();
        sl_orders.sort_unstable();
        assert_eq!((orders, sizes), (sl_orders, sl_sizes.clone()));
    }
}
