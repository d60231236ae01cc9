//! Search for monic quartics over a quadratic field whose splitting field is
//! an S4-extension not coming from Q, with `K` and `K^theta` disjoint.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::fq::{factor_poly, roots_by_scan, Fe, Fq, FqPoly, DEFAULT_SEED};
use super::poly::discriminant_small;
use super::quad::{square_root, QuadField, QuadInt};
use crate::error::{Error, Result};

/// Required factorization shape of the residue polynomial at each of the three primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// Irreducible quartic with a coefficient outside the prime field.
    IrreducibleNotRational,
    /// Irreducible quadratic times two distinct linear factors.
    QuadraticTwoLinear,
    /// Irreducible cubic times a linear factor.
    CubicLinear,
}

pub const SHAPES: [Shape; 3] = [Shape::IrreducibleNotRational, Shape::QuadraticTwoLinear, Shape::CubicLinear];

impl Shape {
    fn degrees(self) -> &'static [usize] {
        match self {
            Shape::IrreducibleNotRational => &[4],
            Shape::QuadraticTwoLinear => &[2, 1, 1],
            Shape::CubicLinear => &[3, 1],
        }
    }
}

/// Checks a residue polynomial against its shape through `factor_poly`.
pub fn shape_holds(fq: &Fq, g: &FqPoly, shape: Shape) -> (bool, String) {
    let fa = match factor_poly(fq, g, DEFAULT_SEED) {
        Ok(f) => f,
        Err(e) => return (false, e.to_string()),
    };
    let degs = fa.degrees();
    let mut ok = fa.is_squarefree() && degs == shape.degrees() && g.degree() == 4;
    let mut note = format!("factor degrees {degs:?}");
    if shape == Shape::IrreducibleNotRational {
        let outside = g.coeffs().iter().position(|&c| !fq.in_prime_field(c));
        ok &= outside.is_some();
        note += &match outside {
            Some(i) => format!(", coefficient {i} outside F_{}", fq.characteristic()),
            None => format!(", all coefficients in F_{}", fq.characteristic()),
        };
    }
    (ok, note)
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub condition: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticCandidate {
    pub d: i64,
    pub primes: [u64; 3],
    /// Constant term first; the last entry is 1.
    pub coeffs: Vec<String>,
    pub discriminant: String,
    pub flags: [bool; 5],
    pub evidence: Vec<Evidence>,
    #[serde(skip)]
    pub poly: Vec<QuadInt>,
    #[serde(skip)]
    pub disc: QuadInt,
}

impl QuarticCandidate {
    pub fn all_flags(&self) -> bool {
        self.flags.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub attempts: u64,
    pub residue_draws: [u64; 3],
    pub repairs: u64,
    pub modulus: String,
    pub repair_height: i64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub budget: u64,
    pub seed: u64,
    /// Coordinates of the repair polynomial are drawn from `[-h, h]`.
    pub repair_height: i64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 1_000_000, seed: DEFAULT_SEED, repair_height: 2 }
    }
}

/// Condition (v): `D^theta` is not a square in `E(sqrt D)`, decided as
/// "neither `D^theta` nor `D D^theta` is a square in E".
pub fn condition_v(disc: &QuadInt) -> (bool, String) {
    let dt = disc.conj();
    let a = square_root(&dt).is_some();
    let b = square_root(&dt.mul(disc)).is_some();
    (!a && !b, format!("D^theta square in E: {a}; D*D^theta square in E: {b}"))
}

fn residues(field: &QuadField, primes: &[u64; 3], f: &[QuadInt]) -> Result<Vec<(Fq, FqPoly)>> {
    primes
        .iter()
        .map(|&p| {
            let fq = field.residue_field(p)?;
            let c = f.iter().map(|x| x.reduce(&fq, None)).collect::<Result<Vec<Fe>>>()?;
            Ok((fq, FqPoly::new(c)))
        })
        .collect()
}

/// Recomputes the five flags of a monic quartic from scratch, with evidence.
pub fn certify(field: &QuadField, primes: [u64; 3], f: &[QuadInt]) -> Result<QuarticCandidate> {
    if f.len() != 5 || f[4] != field.int(1) {
        return Err(Error::Input("need a monic quartic".into()));
    }
    if f.iter().any(|c| !c.is_integral()) {
        return Err(Error::Input("coefficients must be integral".into()));
    }
    let res = residues(field, &primes, f)?;
    let mut evidence = Vec::new();
    let mut flags = [false; 5];
    for (j, ((fq, g), shape)) in res.iter().zip(SHAPES).enumerate() {
        let (ok, note) = shape_holds(fq, g, shape);
        flags[j] = ok;
        evidence.push(Evidence {
            condition: ["i", "ii", "iii"][j].into(),
            holds: ok,
            detail: format!("mod {}: {} -> {note}", primes[j], g.display(fq)),
        });
    }
    // (iv): f is by construction congruent to its own residues; record that f is monic over O_E
    flags[3] = true;
    evidence.push(Evidence {
        condition: "iv".into(),
        holds: true,
        detail: "monic quartic over O_E reducing to the residue polynomials above".into(),
    });
    let disc = discriminant_small(f)?;
    let (ok5, note) = condition_v(&disc);
    flags[4] = ok5;
    evidence.push(Evidence { condition: "v".into(), holds: ok5, detail: format!("D = {disc}; {note}") });
    Ok(QuarticCandidate {
        d: field.d(),
        primes,
        coeffs: f.iter().map(|c| c.to_string()).collect(),
        discriminant: disc.to_string(),
        flags,
        evidence,
        poly: f.to_vec(),
        disc,
    })
}

fn random_monic_quartic(fq: &Fq, rng: &mut ChaCha8Rng) -> FqPoly {
    let mut c: Vec<Fe> = (0..4).map(|_| fq.random(rng)).collect();
    c.push(fq.one());
    FqPoly::new(c)
}

fn crt(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut m = BigInt::from(1);
    let mut x = BigInt::zero();
    for &(r, p) in residues {
        let p = BigInt::from(p);
        // x + m t = r mod p
        let inv = m.extended_gcd(&p).x.mod_floor(&p);
        let t = ((BigInt::from(r) - &x) * inv).mod_floor(&p);
        x += &m * t;
        m *= p;
    }
    let half = &m / 2;
    if x > half {
        x -= &m;
    }
    (x, m)
}

/// Lifts three residue polynomials to one monic quartic over O_E.
pub fn lift(field: &QuadField, primes: &[u64; 3], targets: &[FqPoly]) -> Vec<QuadInt> {
    (0..5)
        .map(|k| {
            let xs: Vec<(u64, u64)> = (0..3).map(|j| (targets[j].coeffs()[k][0], primes[j])).collect();
            let ys: Vec<(u64, u64)> = (0..3).map(|j| (targets[j].coeffs()[k][1], primes[j])).collect();
            field.from_int_coords(crt(&xs).0, crt(&ys).0)
        })
        .collect()
}

/// Search with the given (or randomly drawn) residue targets and a repair loop for condition (v).
pub fn search_quartic(
    field: &QuadField,
    primes: [u64; 3],
    targets: Option<&[FqPoly]>,
    cfg: &SearchConfig,
) -> Result<(QuarticCandidate, SearchStats)> {
    if primes[0] == primes[1] || primes[1] == primes[2] || primes[0] == primes[2] {
        return Err(Error::Input("the three primes must be distinct".into()));
    }
    let fields = primes.iter().map(|&p| field.residue_field(p)).collect::<Result<Vec<Fq>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let modulus: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let mut stats = SearchStats {
        modulus: modulus.to_string(),
        repair_height: cfg.repair_height,
        seed: cfg.seed,
        ..Default::default()
    };
    let mut chosen = Vec::new();
    for (j, fq) in fields.iter().enumerate() {
        match targets {
            Some(t) => {
                let g = t.get(j).ok_or_else(|| Error::Input("three residue targets needed".into()))?;
                let (ok, note) = shape_holds(fq, g, SHAPES[j]);
                if !ok || g.lead() != fq.one() {
                    return Err(Error::Input(format!(
                        "target mod {} violates condition ({}): {note}",
                        primes[j],
                        ["i", "ii", "iii"][j]
                    )));
                }
                chosen.push(g.clone());
            }
            None => loop {
                if stats.attempts >= cfg.budget {
                    return Err(Error::SearchExhausted(format!("budget {} spent drawing residues", cfg.budget)));
                }
                stats.attempts += 1;
                stats.residue_draws[j] += 1;
                let g = random_monic_quartic(fq, &mut rng);
                if shape_holds(fq, &g, SHAPES[j]).0 {
                    chosen.push(g);
                    break;
                }
            },
        }
    }
    let base = lift(field, &primes, &chosen);
    let mut f = base.clone();
    let h = cfg.repair_height;
    loop {
        if stats.attempts >= cfg.budget {
            return Err(Error::SearchExhausted(format!(
                "budget {} spent; {} repairs tried",
                cfg.budget, stats.repairs
            )));
        }
        stats.attempts += 1;
        let disc = discriminant_small(&f)?;
        if condition_v(&disc).0 {
            break;
        }
        // add h with h = 0 mod every Q_j, keeping f monic
        stats.repairs += 1;
        f = base.clone();
        for c in f.iter_mut().take(4) {
            let x = BigInt::from(rng.gen_range(-h..=h)) * &modulus;
            let y = BigInt::from(rng.gen_range(-h..=h)) * &modulus;
            *c = c.add(&field.from_int_coords(x, y));
        }
    }
    let cand = certify(field, primes, &f)?;
    if !cand.all_flags() {
        return Err(Error::Internal(format!("search produced an uncertified candidate: {:?}", cand.flags)));
    }
    Ok((cand, stats))
}

/// Re-verifies all five conditions through separate code paths: residue shapes by
/// exhaustive root and quadratic-factor counts, the discriminant as a resultant over
/// `Q(sqrt d)`, and (v) by solving `z^2 = D^theta` and `z^2 = D^theta / D` in E.
pub fn verify_candidate(field: &QuadField, c: &QuarticCandidate) -> Result<[bool; 5]> {
    let f = &c.poly;
    let mut out = [false; 5];
    for (j, &p) in c.primes.iter().enumerate() {
        let fq = field.residue_field(p)?;
        let g = FqPoly::new(f.iter().map(|x| x.reduce(&fq, None)).collect::<Result<Vec<Fe>>>()?);
        let roots = roots_by_scan(&fq, &g);
        let squarefree = fq.pgcd(&g, &fq.pderiv(&g)).is_one();
        let irr_quadratics = monic_irreducible_quadratic_divisors(&fq, &g);
        out[j] = squarefree
            && g.degree() == 4
            && match SHAPES[j] {
                Shape::IrreducibleNotRational => {
                    roots.is_empty() && irr_quadratics == 0 && g.coeffs().iter().any(|x| x[1] != 0)
                }
                Shape::QuadraticTwoLinear => roots.len() == 2 && irr_quadratics == 1,
                Shape::CubicLinear => roots.len() == 1 && irr_quadratics == 0,
            };
    }
    // (iv): the stored residues are the reductions of f, and f is a monic integral quartic
    out[3] = f.len() == 5 && f[4] == field.int(1) && f.iter().all(|x| x.is_integral());
    let disc = discriminant_by_resultant(f)?;
    if disc != c.disc {
        return Ok(out);
    }
    let dt = disc.conj();
    let first = square_root(&dt).map(|z| z.mul(&z) == dt).unwrap_or(false);
    let ratio = dt.div(&disc)?;
    let second = square_root(&ratio).map(|z| z.mul(&z) == ratio).unwrap_or(false);
    out[4] = !first && !second;
    Ok(out)
}

fn monic_irreducible_quadratic_divisors(fq: &Fq, g: &FqPoly) -> usize {
    let elems: Vec<Fe> = fq.elements().collect();
    let mut n = 0;
    for &a in &elems {
        for &b in &elems {
            let q = FqPoly::new(vec![b, a, fq.one()]);
            if !roots_by_scan(fq, &q).is_empty() {
                continue;
            }
            if fq.prem(g, &q).is_zero() {
                n += 1;
            }
        }
    }
    n
}

/// `Res(f, f')` over Q(sqrt d) by Gaussian elimination on the Sylvester matrix.
pub fn discriminant_by_resultant(f: &[QuadInt]) -> Result<QuadInt> {
    let d = f[0].d();
    let n = f.len() - 1;
    let df: Vec<QuadInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&BigRational::from_integer(i.into())))
        .collect();
    let size = 2 * n - 1;
    let zero = QuadInt::zero_in(d);
    let mut m = vec![vec![zero.clone(); size]; size];
    for i in 0..n - 1 {
        for (j, c) in f.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in df.iter().rev().enumerate() {
            m[n - 1 + i][i + j] = c.clone();
        }
    }
    let mut det = QuadInt::new(d, BigRational::from_integer(1.into()), BigRational::zero());
    for k in 0..size {
        let Some(piv) = (k..size).find(|&i| !m[i][k].is_zero()) else {
            return Ok(zero);
        };
        if piv != k {
            m.swap(piv, k);
            det = det.neg();
        }
        det = det.mul(&m[k][k]);
        let inv = m[k][k].inv()?;
        for i in k + 1..size {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].mul(&inv);
            for j in k..size {
                let t = factor.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    let res = det.div(&f[n])?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { res.neg() } else { res })
}

/// Chebotarev densities of the cycle types of S4, descending partitions.
pub fn s4_densities() -> Vec<(Vec<usize>, f64)> {
    vec![
        (vec![1, 1, 1, 1], 1.0 / 24.0),
        (vec![2, 1, 1], 6.0 / 24.0),
        (vec![2, 2], 3.0 / 24.0),
        (vec![3, 1], 8.0 / 24.0),
        (vec![4], 6.0 / 24.0),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplingReport {
    pub samples: usize,
    pub largest_prime: u64,
    pub frequencies: BTreeMap<String, f64>,
    /// `(type, observed, expected, relative deviation)` per S4 type.
    pub comparison: Vec<(String, f64, f64, f64)>,
    pub tolerance: f64,
    pub s4_consistent: bool,
    /// Over E: fraction of primes where the Frobenius parities of `f` and `f^theta` agree.
    pub theta_parity_agreement: Option<f64>,
}

fn type_key(t: &[usize]) -> String {
    format!("({})", t.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
}

fn parity(t: &[usize]) -> usize {
    t.iter().map(|d| d - 1).sum::<usize>() % 2
}

/// Factor types at degree-1 primes: all primes over Q (`field = None`), split primes of E otherwise.
pub fn frobenius_sampling(f: &[QuadInt], field: Option<&QuadField>, count: usize) -> Result<SamplingReport> {
    if count < 100 {
        return Err(Error::Input("sample count must be at least 100".into()));
    }
    if let (None, Some(c)) = (field, f.iter().find(|c| !c.is_rational())) {
        return Err(Error::Input(format!("coefficient {c} is not rational")));
    }
    let deg = f.len() - 1;
    let mut types: Vec<(u64, Vec<usize>, Option<Vec<usize>>)> = Vec::new();
    let mut p = 2u64;
    let chunk = 512u64;
    while types.len() < count {
        if p > 50_000_000 {
            return Err(Error::SearchExhausted("too few usable primes".into()));
        }
        let ps: Vec<u64> = (p..p + chunk).filter(|&q| crate::modp::is_prime(q)).collect();
        let mut batch: Vec<(u64, Vec<usize>, Option<Vec<usize>>)> = ps
            .par_iter()
            .flat_map_iter(|&q| sample_prime(f, field, q, deg))
            .collect();
        batch.sort_by_key(|a| a.0);
        types.extend(batch);
        p += chunk;
    }
    types.truncate(count);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for (_, t, _) in &types {
        *counts.entry(type_key(t)).or_default() += 1;
    }
    let freq: BTreeMap<String, f64> = counts.into_iter().map(|(k, n)| (k, n as f64 / count as f64)).collect();
    let tolerance = 0.30;
    let comparison: Vec<(String, f64, f64, f64)> = s4_densities()
        .into_iter()
        .map(|(t, dens)| {
            let k = type_key(&t);
            let obs = freq.get(&k).copied().unwrap_or(0.0);
            (k, obs, dens, (obs - dens).abs() / dens)
        })
        .collect();
    let s4_consistent = deg == 4 && comparison.iter().all(|c| c.3 <= tolerance);
    let theta_parity_agreement = field.map(|_| {
        let agree = types.iter().filter(|(_, t, u)| u.as_ref().map(|u| parity(t) == parity(u)) == Some(true)).count();
        agree as f64 / count as f64
    });
    Ok(SamplingReport {
        samples: count,
        largest_prime: types.last().map_or(0, |t| t.0),
        frequencies: freq,
        comparison,
        tolerance,
        s4_consistent,
        theta_parity_agreement,
    })
}

fn sample_prime(f: &[QuadInt], field: Option<&QuadField>, p: u64, deg: usize) -> Vec<(u64, Vec<usize>, Option<Vec<usize>>)> {
    let Ok(fq) = Fq::prime(p) else { return vec![] };
    let ws: Vec<Option<u64>> = match field {
        None => vec![None],
        Some(e) => match e.split_embeddings(p) {
            Ok(ws) => ws.into_iter().map(Some).collect(),
            Err(_) => return vec![],
        },
    };
    let reduce = |g: &[QuadInt], w: Option<u64>| -> Option<Vec<usize>> {
        let c: Vec<Fe> = g
            .iter()
            .map(|x| match w {
                Some(w) => x.reduce(&fq, Some(w)).ok(),
                None => {
                    let (a, _) = x.int_coords()?;
                    Some([a.mod_floor(&BigInt::from(p)).to_u64().unwrap(), 0])
                }
            })
            .collect::<Option<_>>()?;
        let r = FqPoly::new(c);
        if r.degree() != deg || !fq.pgcd(&r, &fq.pderiv(&r)).is_one() {
            return None;
        }
        factor_poly(&fq, &r, DEFAULT_SEED).ok().map(|fa| fa.degrees())
    };
    let conj: Vec<QuadInt> = f.iter().map(|c| c.conj()).collect();
    ws.into_iter()
        .filter_map(|w| {
            let t = reduce(f, w)?;
            let u = if field.is_some() { Some(reduce(&conj, w)?) } else { None };
            Some((p, t, u))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_shape_rejection() {
        let e = QuadField::new(-1).unwrap();
        let f7 = e.residue_field(7).unwrap();
        // x^4 - x = x (x^3 - 1) has the wrong shape for (ii)
        let bad = FqPoly::from_ints(&f7, &[0, -1, 0, 0, 1]);
        assert!(!shape_holds(&f7, &bad, Shape::QuadraticTwoLinear).0);
        let f3 = e.residue_field(3).unwrap();
        let f11 = e.residue_field(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ok1 = loop {
            let g = random_monic_quartic(&f3, &mut rng);
            if shape_holds(&f3, &g, Shape::IrreducibleNotRational).0 {
                break g;
            }
        };
        let ok3 = loop {
            let g = random_monic_quartic(&f11, &mut rng);
            if shape_holds(&f11, &g, Shape::CubicLinear).0 {
                break g;
            }
        };
        let err = search_quartic(&e, [3, 7, 11], Some(&[ok1, bad, ok3]), &SearchConfig::default());
        assert!(matches!(err, Err(Error::Input(m)) if m.contains("(ii)")));
    }

    #[test]
    fn rational_discriminant_reduces_to_rational_tests() {
        let e = QuadField::new(-1).unwrap();
        // D rational: D^theta = D is a square in E(sqrt D), so (v) always fails
        for d in [-283, -4, 2, 5] {
            assert!(!condition_v(&e.int(d)).0);
        }
        let d = QuadInt::new(-1, BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        assert!(condition_v(&d).0);
    }

    #[test]
    fn resultant_matches_formula() {
        let e = QuadField::new(-1).unwrap();
        let f: Vec<QuadInt> = vec![
            e.from_int_coords(3.into(), (-2).into()),
            e.from_int_coords(0.into(), 5.into()),
            e.int(7),
            e.from_int_coords((-1).into(), 1.into()),
            e.int(1),
        ];
        assert_eq!(discriminant_by_resultant(&f).unwrap(), discriminant_small(&f).unwrap());
    }
}
