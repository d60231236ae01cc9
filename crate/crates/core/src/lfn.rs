//! Local Euler factors of Artin L-functions, truncated Dirichlet series, and
//! the permutation-character identities behind the Dedekind factorization.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::asai::{asai_character, AsaiSetup};
use crate::chr::{charpoly_of_class, induce, inner_product_rational, ClassFunction};
use crate::cyc::CycloNumber;
use crate::error::{Error, Result};
use crate::grp::{parse_cycles, FiniteGroup, Group, Subgroup};
use crate::modp::primes_up_to;
use crate::nt::poly::{cubic_galois_is_symmetric, cycle_type, discriminant, format_poly, IntPoly};
use crate::nt::{quartic_galois_over_q, QuarticGroup};

/// `1 + c1 T + ... + cd T^d` at a prime (or unattached when `p` is absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFactorPoly {
    pub p: Option<u64>,
    pub coeffs: Vec<CycloNumber>,
}

impl EulerFactorPoly {
    pub fn from_ints(p: Option<u64>, c: &[i64]) -> EulerFactorPoly {
        EulerFactorPoly { p, coeffs: c.iter().map(|&v| CycloNumber::from_int(v, 1)).collect() }.trimmed()
    }

    fn trimmed(mut self) -> EulerFactorPoly {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
        self.coeffs = self.coeffs.iter().map(|c| c.minimal_conductor()).collect();
        self
    }

    pub fn at(mut self, p: u64) -> EulerFactorPoly {
        self.p = Some(p);
        self
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, o: &EulerFactorPoly) -> EulerFactorPoly {
        let n = self.conductor().max(o.conductor());
        let n = num_integer::lcm(self.conductor(), o.conductor()).max(n);
        let mut out = vec![CycloNumber::zero(n); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(&a.promote(n) * &b.promote(n));
            }
        }
        EulerFactorPoly { p: self.p.or(o.p), coeffs: out }.trimmed()
    }

    fn conductor(&self) -> u32 {
        self.coeffs.iter().fold(1, |acc, c| num_integer::lcm(acc, c.conductor()))
    }

    /// Integer coefficients, when every coefficient is one.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.is_rational()).collect()
    }

    /// `log` of `1/P(p^-s)` in the principal branch, summed over reciprocal roots numerically.
    pub fn log_inverse_at(&self, p: u64, s: f64) -> f64 {
        let t = (p as f64).powf(-s);
        let (mut re, mut im) = (0.0, 0.0);
        let mut tk = 1.0;
        for c in &self.coeffs {
            let (a, b) = c.to_complex();
            re += a * tk;
            im += b * tk;
            tk *= t;
        }
        -0.5 * (re * re + im * im).ln()
    }
}

impl fmt::Display for EulerFactorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| match c.is_rational() {
                Some(q) if q.is_integer() => q.numer().to_string(),
                Some(q) => format!("{}/{}", q.numer(), q.denom()),
                None => c.to_string(),
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Multiplicity of `zeta_o^j` as an eigenvalue of `rho(g)`, `g` in the class and `o` its order.
pub fn eigenvalue_multiplicities(chi: &ClassFunction, class: usize) -> Result<Vec<i64>> {
    let g = chi.group();
    let cl = g.classes();
    let o = cl.rep_order(class);
    let n = num_integer::lcm(o as u32, chi.value(class).conductor());
    let mut n = n;
    for k in 0..o {
        n = num_integer::lcm(n, chi.value(cl.power_class(g, class, k as i64)).conductor());
    }
    let mut out = Vec::with_capacity(o);
    for j in 0..o {
        let mut acc = CycloNumber::zero(n);
        for k in 0..o {
            let v = chi.value(cl.power_class(g, class, k as i64)).promote(n);
            let z = CycloNumber::root_of_unity(o as u32, -((j * k) as i64)).promote(n);
            acc = &acc + &(&v * &z);
        }
        let m = acc
            .is_rational()
            .map(|q| q / BigRational::from_integer(BigInt::from(o)))
            .filter(|q| q.is_integer() && *q >= BigRational::zero())
            .ok_or_else(|| Error::NotACharacter(format!("eigenvalue zeta_{o}^{j} has multiplicity {acc} / {o}")))?;
        out.push(m.to_integer().to_i64().unwrap_or(i64::MAX));
    }
    Ok(out)
}

/// `det(1 - rho(g) T)` for `g` in the class.
pub fn local_factor(chi: &ClassFunction, class: usize) -> Result<EulerFactorPoly> {
    let mult = eigenvalue_multiplicities(chi, class)?;
    if chi.degree().map(|d| d) != Some(mult.iter().sum::<i64>()) || mult.iter().all(|&m| m == 0) {
        return Err(Error::NotACharacter("eigenvalue count differs from the degree".into()));
    }
    Ok(EulerFactorPoly { p: None, coeffs: charpoly_of_class(chi, class)? }.trimmed())
}

/// `prod (1 - T^d)` over the factor degrees of `f mod p`.
pub fn dedekind_local(f: &[BigInt], p: u64) -> Result<EulerFactorPoly> {
    let degs = cycle_type(f, p)?;
    Ok(shape_factor(&degs).at(p))
}

fn shape_factor(degs: &[usize]) -> EulerFactorPoly {
    degs.iter().fold(EulerFactorPoly::from_ints(None, &[1]), |acc, &d| {
        let mut c = vec![0i64; d + 1];
        c[0] = 1;
        c[d] = -1;
        acc.mul(&EulerFactorPoly::from_ints(None, &c))
    })
}

/// Permutation character of `G` on the cosets of `H`, minus the trivial character.
pub fn a_nf_character(h: &Subgroup) -> Result<ClassFunction> {
    let emb = h.embed();
    let perm = induce(&emb, &ClassFunction::trivial(&emb.group))?;
    perm.sub(&ClassFunction::trivial(h.parent()))
}

/// Splitting-field data of an integer polynomial with full symmetric Galois group.
#[derive(Clone, Debug)]
pub struct GaloisArithData {
    pub poly: IntPoly,
    pub group: Group,
    /// Stabilizer of the first root.
    pub point_stabilizer: Subgroup,
    pub discriminant: BigInt,
    class_of_type: BTreeMap<Vec<usize>, usize>,
}

fn cycle_type_of(perm: &[u16]) -> Vec<usize> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

impl GaloisArithData {
    /// For a monic irreducible cubic or quartic whose Galois group over Q is `S_n`.
    pub fn symmetric(f: &[BigInt]) -> Result<GaloisArithData> {
        let n = f.len() - 1;
        let full = match n {
            3 => cubic_galois_is_symmetric(f)?,
            4 => quartic_galois_over_q(f)? == QuarticGroup::S4,
            _ => return Err(Error::Input("symmetric Galois data covers cubics and quartics".into())),
        };
        if !full {
            return Err(Error::Precondition(format!("Galois group of {} is not S{n}", format_poly(f))));
        }
        let cycle = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
        let gens = [parse_cycles("(1 2)", n)?, parse_cycles(&cycle, n)?];
        let group = Arc::new(FiniteGroup::from_permutations(&format!("S{n}"), n, &gens)?);
        let stab: Vec<usize> =
            (0..group.order()).filter(|&x| group.permutation(x).map(|p| p[0] == 0).unwrap_or(false)).collect();
        let point_stabilizer = Subgroup::from_members(&group, &stab)?;
        let cl = group.classes();
        let mut class_of_type = BTreeMap::new();
        for c in 0..cl.len() {
            let perm = group.permutation(cl.representative(c)).ok_or_else(|| Error::Internal("no permutation".into()))?;
            class_of_type.insert(cycle_type_of(perm), c);
        }
        Ok(GaloisArithData { poly: f.to_vec(), group, point_stabilizer, discriminant: discriminant(f), class_of_type })
    }

    /// Replaces the cycle-type map, e.g. for a negative control.
    pub fn with_class_map(mut self, map: BTreeMap<Vec<usize>, usize>) -> GaloisArithData {
        self.class_of_type = map;
        self
    }

    pub fn class_map(&self) -> &BTreeMap<Vec<usize>, usize> {
        &self.class_of_type
    }

    pub fn is_unramified(&self, p: u64) -> bool {
        !(&self.discriminant % BigInt::from(p)).is_zero()
    }

    /// Frobenius class at an unramified prime, from the factorization type.
    pub fn frobenius_class(&self, p: u64) -> Result<usize> {
        let t = cycle_type(&self.poly, p)?;
        self.class_of_type.get(&t).copied().ok_or_else(|| Error::Internal(format!("cycle type {t:?} has no class")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DedekindLine {
    pub p: u64,
    pub zeta_n: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DedekindReport {
    pub poly: String,
    pub bound: u64,
    pub checked: usize,
    pub failed: usize,
    pub skipped: Vec<u64>,
    pub first_failure: Option<DedekindLine>,
    pub lines: Vec<DedekindLine>,
}

impl DedekindReport {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

/// `zeta_N,p = (1 - T) L_p(a_N/F)` at every unramified `p <= bound`.
pub fn verify_dedekind(data: &GaloisArithData, bound: u64) -> Result<DedekindReport> {
    let a = a_nf_character(&data.point_stabilizer)?;
    let ncl = data.group.classes().len();
    let one_minus_t = EulerFactorPoly::from_ints(None, &[1, -1]);
    let rhs_by_class: Vec<EulerFactorPoly> = (0..ncl)
        .map(|c| Ok(one_minus_t.mul(&local_factor(&a, c)?)))
        .collect::<Result<_>>()?;
    let primes = primes_up_to(bound);
    let skipped: Vec<u64> = primes.iter().copied().filter(|&p| !data.is_unramified(p)).collect();
    let lines: Vec<DedekindLine> = primes
        .par_iter()
        .filter(|&&p| data.is_unramified(p))
        .map(|&p| {
            let lhs = dedekind_local(&data.poly, p)?;
            let class = data.frobenius_class(p)?;
            let rhs = &rhs_by_class[class];
            let ok = lhs.coeffs == rhs.coeffs;
            Ok(DedekindLine { p, zeta_n: lhs.to_string(), rhs: rhs.to_string(), ok })
        })
        .collect::<Result<_>>()?;
    let failed = lines.iter().filter(|l| !l.ok).count();
    Ok(DedekindReport {
        poly: format_poly(&data.poly),
        bound,
        checked: lines.len(),
        failed,
        skipped,
        first_failure: lines.iter().find(|l| !l.ok).cloned(),
        lines,
    })
}

/// `a_{L/F} = Ind_{H_N}^G a_{L/N} + a_{N/F}` for `H_L <= H_N <= G`.
pub fn transitivity_check(h_l: &Subgroup, h_n: &Subgroup) -> Result<bool> {
    if !Arc::ptr_eq(h_l.parent(), h_n.parent()) || !h_l.is_subgroup_of(h_n) {
        return Err(Error::Input("subgroups are not nested".into()));
    }
    let a_lf = a_nf_character(h_l)?;
    let a_nf = a_nf_character(h_n)?;
    let emb_n = h_n.embed();
    let inner = emb_n.pull_back(h_l)?;
    let a_ln = a_nf_character(&inner)?;
    let rhs = induce(&emb_n, &a_ln)?.add(&a_nf)?;
    Ok(rhs == a_lf)
}

/// Every subgroup of a small group, each generated by at most two elements
/// (which covers all subgroups of S4), sorted by order then members.
pub fn two_generated_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut seen: BTreeMap<Vec<usize>, Subgroup> = BTreeMap::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let s = Subgroup::generated(g, &[a, b]);
            seen.entry(s.members().to_vec()).or_insert(s);
        }
    }
    let mut out: Vec<Subgroup> = seen.into_values().collect();
    out.sort_by(|x, y| (x.order(), x.members()).cmp(&(y.order(), y.members())));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub chains: usize,
    pub failures: Vec<String>,
}

/// Transitivity over every nested pair of subgroups.
pub fn transitivity_sweep(g: &Group) -> Result<ChainReport> {
    let subs = two_generated_subgroups(g);
    let mut chains = 0;
    let mut failures = Vec::new();
    for l in &subs {
        for n in &subs {
            if l.is_subgroup_of(n) {
                chains += 1;
                if !transitivity_check(l, n)? {
                    failures.push(format!("{:?} <= {:?}", l.members(), n.members()));
                }
            }
        }
    }
    Ok(ChainReport { chains, failures })
}

/// For S4: the a-character of the fixed field of a Sylow 2-subgroup (the cubic
/// resolvent field) equals the induction from A4 of a cubic character.
pub fn resolvent_field_identity(g: &Group) -> Result<bool> {
    if g.order() != 24 {
        return Err(Error::Input("expects S4".into()));
    }
    let subs = two_generated_subgroups(g);
    let d4 = subs.iter().find(|s| s.order() == 8).ok_or_else(|| Error::Input("no subgroup of order 8".into()))?;
    let a4 = subs
        .iter()
        .find(|s| s.order() == 12)
        .ok_or_else(|| Error::Input("no subgroup of order 12".into()))?;
    let emb = a4.embed();
    let lin = crate::chr::linear_characters(&emb.group)?;
    let cubic = lin
        .iter()
        .find(|c| c.values().iter().any(|v| v.is_rational().is_none()))
        .ok_or_else(|| Error::Input("A4 has no cubic character".into()))?;
    Ok(induce(&emb, cubic)? == a_nf_character(d4)?)
}

/// Checks `L_p(Ind(sigma sigma^theta)) = L_p(As) L_p(As delta)` at every class.
pub fn asai_euler_check(s: &AsaiSetup) -> Result<bool> {
    let st = s.sigma_theta()?;
    let ind = induce(&s.h, &s.sigma.tensor(&st)?)?;
    let asai = asai_character(s)?;
    let twisted = asai.tensor(&s.delta)?;
    for c in 0..s.group().classes().len() {
        if local_factor(&ind, c)? != local_factor(&asai, c)?.mul(&local_factor(&twisted, c)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truncated Dirichlet series `sum a_n n^-s`, `n <= len`.
#[derive(Clone, Debug)]
pub struct DirichletSeriesTrunc {
    pub len: usize,
    /// `coeffs[n]` is `a_n`; index 0 unused.
    pub coeffs: Vec<BigRational>,
    pub primes: Vec<u64>,
    pub skipped: Vec<u64>,
    /// Largest local degree, used by the tail bound.
    pub degree: usize,
}

/// Expands an Euler product; primes without a factor (or listed in `skipped`) contribute 1.
pub fn dirichlet_expand(
    factors: &BTreeMap<u64, EulerFactorPoly>,
    skipped: &[u64],
    len: usize,
) -> Result<DirichletSeriesTrunc> {
    if len == 0 {
        return Err(Error::Input("series length must be positive".into()));
    }
    let mut spf = vec![0usize; len + 1];
    for i in 2..=len {
        if spf[i] == 0 {
            for j in (i..=len).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    let mut prime_power: BTreeMap<u64, Vec<BigRational>> = BTreeMap::new();
    let mut degree = 0;
    for (&p, f) in factors.range(..=len as u64) {
        if skipped.contains(&p) {
            continue;
        }
        let c = f.rational_coeffs().ok_or_else(|| Error::Input(format!("factor at p={p} is not rational")))?;
        degree = degree.max(f.degree());
        // 1/P(T) as a power series up to p^k <= len
        let mut kmax = 0;
        let mut q = 1usize;
        while q <= len / p as usize {
            q *= p as usize;
            kmax += 1;
        }
        let mut b = vec![BigRational::one()];
        for k in 1..=kmax {
            let mut acc = BigRational::zero();
            for i in 1..=k.min(c.len() - 1) {
                acc -= &c[i] * &b[k - i];
            }
            b.push(acc);
        }
        prime_power.insert(p, b);
    }
    let mut coeffs = vec![BigRational::zero(); len + 1];
    coeffs[1] = BigRational::one();
    for n in 2..=len {
        let p = spf[n];
        let (mut m, mut k) = (n, 0);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        let local = prime_power.get(&(p as u64)).map_or(BigRational::zero(), |b| b[k].clone());
        coeffs[n] = &local * &coeffs[m];
    }
    Ok(DirichletSeriesTrunc {
        len,
        coeffs,
        primes: prime_power.keys().copied().collect(),
        skipped: skipped.to_vec(),
        degree: degree.max(1),
    })
}

/// `zeta(s)` for real `s > 1` by Euler-Maclaurin.
pub fn zeta_real(s: f64) -> f64 {
    let m = 1000usize;
    let head: f64 = (1..m).map(|n| (n as f64).powf(-s)).sum();
    let mf = m as f64;
    let b2 = s * mf.powf(-s - 1.0) / 12.0;
    let b4 = s * (s + 1.0) * (s + 2.0) * mf.powf(-s - 3.0) / 720.0;
    head + mf.powf(1.0 - s) / (s - 1.0) + 0.5 * mf.powf(-s) + b2 - b4
}

/// Value of the truncated series and a bound for the omitted tail, `zeta(s)^k - sum_{n<=N} d_k(n) n^-s`.
pub fn numeric_eval(series: &DirichletSeriesTrunc, s: f64) -> Result<(f64, f64)> {
    if s <= 1.0 {
        return Err(Error::Input(format!("evaluation needs s > 1, got {s}")));
    }
    let n = series.len;
    let k = series.degree;
    let value: f64 = (1..=n).map(|i| series.coeffs[i].to_f64().unwrap_or(0.0) * (i as f64).powf(-s)).sum();
    // d_k(n), multiplicative with d_k(p^e) = C(e + k - 1, k - 1)
    let mut dk = vec![1.0f64; n + 1];
    let mut rest: Vec<usize> = (0..=n).collect();
    for p in primes_up_to(n as u64) {
        let p = p as usize;
        for m in (p..=n).step_by(p) {
            let mut e = 0;
            while rest[m].is_multiple_of(p) {
                rest[m] /= p;
                e += 1;
            }
            dk[m] *= binom(e + k - 1, k - 1);
        }
    }
    let partial: f64 = (1..=n).map(|i| dk[i] * (i as f64).powf(-s)).sum();
    let bound = (zeta_real(s).powi(k as i32) - partial).max(0.0);
    Ok((value, bound))
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleReport {
    pub label: String,
    pub multiplicity: i64,
    pub bound: u64,
    pub grid: Vec<f64>,
    pub log_l: Vec<f64>,
    pub log_zeta: Vec<f64>,
    pub slope: f64,
    pub tolerance: f64,
    pub within: bool,
}

pub const POLE_GRID: [f64; 4] = [1.5, 1.2, 1.1, 1.05];
pub const POLE_TOLERANCE: f64 = 0.35;

/// Least-squares slope of `log L(s, chi x chi-bar)` against `log zeta(s)`, both as
/// partial Euler products over unramified `p <= bound`.
pub fn pole_order_probe(label: &str, chi: &ClassFunction, data: &GaloisArithData, grid: &[f64], bound: u64) -> Result<PoleReport> {
    if grid.iter().any(|&s| s <= 1.0 || s > 2.0) || grid.len() < 2 {
        return Err(Error::Input("grid must hold at least two points in (1, 2]".into()));
    }
    let m = inner_product_rational(chi, chi)?;
    let multiplicity = m.to_integer().to_i64().unwrap_or(0);
    let square = chi.tensor(&chi.conj())?;
    let ncl = data.group.classes().len();
    let factors: Vec<EulerFactorPoly> = (0..ncl).map(|c| local_factor(&square, c)).collect::<Result<_>>()?;
    let frob: Vec<(u64, usize)> = primes_up_to(bound)
        .into_par_iter()
        .filter(|&p| data.is_unramified(p))
        .map(|p| Ok((p, data.frobenius_class(p)?)))
        .collect::<Result<_>>()?;
    let one = EulerFactorPoly::from_ints(None, &[1, -1]);
    let mut log_l = Vec::new();
    let mut log_zeta = Vec::new();
    for &s in grid {
        log_l.push(frob.iter().map(|&(p, c)| factors[c].log_inverse_at(p, s)).sum::<f64>());
        log_zeta.push(frob.iter().map(|&(p, _)| one.log_inverse_at(p, s)).sum::<f64>());
    }
    let n = grid.len() as f64;
    let mx = log_zeta.iter().sum::<f64>() / n;
    let my = log_l.iter().sum::<f64>() / n;
    let sxy: f64 = log_zeta.iter().zip(&log_l).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = log_zeta.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(PoleReport {
        label: label.to_string(),
        multiplicity,
        bound,
        grid: grid.to_vec(),
        log_l,
        log_zeta,
        slope,
        tolerance: POLE_TOLERANCE,
        within: (slope - multiplicity as f64).abs() <= POLE_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chr::character_table;
    use crate::nt::int_poly;

    #[test]
    fn s3_local_factors() {
        let data = GaloisArithData::symmetric(&int_poly(&[-1, -1, 0, 1])).unwrap();
        let a = a_nf_character(&data.point_stabilizer).unwrap();
        let t = character_table(&data.group).unwrap();
        assert!(t.irreducibles().contains(&a));
        let cl = data.group.classes();
        for c in 0..cl.len() {
            let want: &[i64] = match cl.rep_order(c) {
                1 => &[1, -2, 1],
                2 => &[1, 0, -1],
                _ => &[1, 1, 1],
            };
            assert_eq!(local_factor(&a, c).unwrap(), EulerFactorPoly::from_ints(None, want));
        }
        let triv = ClassFunction::trivial(&data.group);
        assert_eq!(local_factor(&triv, 2).unwrap().to_string(), "[1,-1]");
    }

    #[test]
    fn non_character_rejected() {
        let data = GaloisArithData::symmetric(&int_poly(&[-1, -1, 0, 1])).unwrap();
        let a = a_nf_character(&data.point_stabilizer).unwrap();
        let bad = a.sub(&ClassFunction::trivial(&data.group)).unwrap();
        let three = data.group.classes().rep_orders().iter().position(|&o| o == 3).unwrap();
        assert!(matches!(local_factor(&bad, three), Err(Error::NotACharacter(_))));
        assert!(local_factor(&bad.scale(-1), 0).is_err());
    }

    #[test]
    fn dedekind_shapes() {
        let f = int_poly(&[-1, -1, 0, 1]);
        assert_eq!(dedekind_local(&f, 2).unwrap().to_string(), "[1,0,0,-1]");
        assert_eq!(dedekind_local(&f, 5).unwrap().to_string(), "[1,-1,-1,1]");
        assert!(dedekind_local(&f, 23).is_err());
    }

    #[test]
    fn zeta_two() {
        let series = dirichlet_expand(&BTreeMap::new(), &[], 10).unwrap();
        assert_eq!(series.coeffs[1], BigRational::one());
        assert!(series.coeffs[2..].iter().all(|c| c.is_zero()));
        assert!((zeta_real(2.0) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    }
}
