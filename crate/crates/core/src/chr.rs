//! Class functions, character tables and the usual operations on characters.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyc::CycloNumber;
use crate::error::{Error, Result};
use crate::grp::{Embedding, FiniteGroup, Group};
use crate::modp::{self, mat, poly};

/// Largest group for which a character table is computed.
pub const TABLE_ORDER_CAP: usize = 5_000;

/// A function on conjugacy classes, values in `Q(zeta_e)` with `e` the group exponent.
#[derive(Clone)]
pub struct ClassFunction {
    group: Group,
    values: Vec<CycloNumber>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFunction[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    /// Values are moved to the group's conductor; fails if one does not fit.
    pub fn new(group: &Group, values: Vec<CycloNumber>) -> Result<ClassFunction> {
        let k = group.classes().len();
        if values.len() != k {
            return Err(Error::Input(format!("expected {k} class values, got {}", values.len())));
        }
        let e = group.exponent() as u32;
        let values = values
            .into_iter()
            .map(|v| {
                v.at_conductor(e)
                    .ok_or_else(|| Error::Input(format!("value {v} not in Q(zeta_{e})")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { group: group.clone(), values })
    }

    fn raw(group: &Group, values: Vec<CycloNumber>) -> ClassFunction {
        ClassFunction { group: group.clone(), values }
    }

    pub fn constant(group: &Group, v: i64) -> ClassFunction {
        let e = group.exponent() as u32;
        let k = group.classes().len();
        ClassFunction::raw(group, vec![CycloNumber::from_int(v, e); k])
    }

    pub fn trivial(group: &Group) -> ClassFunction {
        ClassFunction::constant(group, 1)
    }

    pub fn zero(group: &Group) -> ClassFunction {
        ClassFunction::constant(group, 0)
    }

    /// Class function from a function on elements (checked to be a class function).
    pub fn from_element_fn(group: &Group, f: impl Fn(usize) -> CycloNumber) -> Result<ClassFunction> {
        let cls = group.classes();
        let vals: Vec<CycloNumber> = cls.representatives().iter().map(|&r| f(r)).collect();
        for x in 0..group.order() {
            if f(x) != vals[cls.class_of(x)] {
                return Err(Error::Input("function is not constant on classes".into()));
            }
        }
        ClassFunction::new(group, vals)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[CycloNumber] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycloNumber {
        &self.values[class]
    }

    pub fn at(&self, element: usize) -> &CycloNumber {
        &self.values[self.group.classes().class_of(element)]
    }

    /// The value at the identity, when it is a rational integer.
    pub fn degree(&self) -> Option<i64> {
        self.values[0].to_i64()
    }

    fn check(&self, other: &ClassFunction) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip(&self, other: &ClassFunction, f: impl Fn(&CycloNumber, &CycloNumber) -> CycloNumber) -> Result<ClassFunction> {
        self.check(other)?;
        let v = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction::raw(&self.group, v))
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product, i.e. the tensor product of characters.
    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        ClassFunction::raw(&self.group, self.values.iter().map(|v| v.scale_int(k)).collect())
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction::raw(&self.group, self.values.iter().map(|v| v.conj()).collect())
    }

    pub fn galois(&self, k: i64) -> ClassFunction {
        ClassFunction::raw(&self.group, self.values.iter().map(|v| v.galois(k)).collect())
    }

    /// `x -> f(x^k)`.
    pub fn adams(&self, k: i64) -> ClassFunction {
        let g = &self.group;
        let cls = g.classes();
        let v = (0..cls.len()).map(|c| self.values[cls.power_class(g, c, k)].clone()).collect();
        ClassFunction::raw(g, v)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Whether all values are rational.
    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.is_rational().is_some())
    }

    pub fn is_self_dual(&self) -> bool {
        self.values.iter().all(|v| *v == v.conj())
    }

    /// Values in the cyclotomic text form.
    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }

    /// Lexicographic order on value vectors.
    pub fn cmp_values(&self, other: &ClassFunction) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            match a.cmp_canonical(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// `<f, g> = |G|^-1 sum f(x) conj(g(x))`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<CycloNumber> {
    f.check(g)?;
    let grp = &f.group;
    let cls = grp.classes();
    let e = grp.exponent() as u32;
    let mut acc = CycloNumber::zero(e);
    for c in 0..cls.len() {
        let t = &f.values[c] * &g.values[c].conj();
        acc = &acc + &t.scale_int(cls.size(c) as i64);
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(grp.order()))))
}

/// Inner product that must be a rational number.
pub fn inner_product_rational(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    inner_product(f, g)?
        .is_rational()
        .ok_or_else(|| Error::NotACharacter("inner product is irrational".into()))
}

/// Inner product that must be a rational integer.
pub fn inner_product_int(f: &ClassFunction, g: &ClassFunction) -> Result<i64> {
    let q = inner_product_rational(f, g)?;
    if !q.is_integer() {
        return Err(Error::NotACharacter(format!("inner product {q} is not an integer")));
    }
    q.to_integer().to_i64().ok_or_else(|| Error::Internal("multiplicity overflow".into()))
}

/// Irreducible characters, sorted by degree and then by values (descending).
#[derive(Clone)]
pub struct CharacterTable {
    group: Group,
    irreducibles: Vec<ClassFunction>,
    prime: u64,
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterTable({}, {} irreducibles)", self.group.label(), self.irreducibles.len())
    }
}

impl CharacterTable {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// The prime used by the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles.iter().map(|c| c.degree().unwrap()).collect()
    }

    pub fn linear_characters(&self) -> Vec<&ClassFunction> {
        self.irreducibles.iter().filter(|c| c.degree() == Some(1)).collect()
    }

    pub fn of_degree(&self, d: i64) -> Vec<(usize, &ClassFunction)> {
        self.irreducibles.iter().enumerate().filter(|(_, c)| c.degree() == Some(d)).collect()
    }

    pub fn index_of(&self, chi: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|c| c == chi)
    }

    /// Plain-text rendering: class data followed by one row per character.
    pub fn render(&self) -> String {
        let g = &self.group;
        let cls = g.classes();
        let mut out = String::new();
        out.push_str(&format!("group {} order {} classes {}\n", g.label(), g.order(), cls.len()));
        for c in 0..cls.len() {
            out.push_str(&format!(
                "class {c} size {} order {} rep {}\n",
                cls.size(c),
                cls.rep_order(c),
                g.element_name(cls.representative(c))
            ));
        }
        for (i, chi) in self.irreducibles.iter().enumerate() {
            out.push_str(&format!("chi{i}: {}\n", chi.to_strings().join(" | ")));
        }
        out
    }
}

struct Dixon<'a> {
    g: &'a FiniteGroup,
    members: Vec<Vec<usize>>,
    p: u64,
}

impl Dixon<'_> {
    fn class_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let cls = self.g.classes();
        let k = cls.len();
        let mut a = vec![vec![0u64; k]; k];
        for l in 0..k {
            let z = cls.representative(l);
            for &x in &self.members[i] {
                let y = self.g.product(self.g.inverse(x), z);
                let j = cls.class_of(y);
                a[j][l] += 1;
            }
        }
        for row in a.iter_mut() {
            for v in row.iter_mut() {
                *v %= self.p;
            }
        }
        a
    }

    /// Common eigenvectors of the class matrices, one per irreducible.
    fn eigenvectors(&self) -> Option<Vec<Vec<u64>>> {
        let p = self.p;
        let k = self.g.classes().len();
        let ident: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
        let mut spaces = vec![ident];
        for i in 1..k {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let a = self.class_matrix(i);
            let mut next = Vec::new();
            for basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                let mut b = basis;
                let piv = mat::rref(&mut b, p);
                let d = b.len();
                // restricted operator in coordinates with respect to b
                let images: Vec<Vec<u64>> = b
                    .iter()
                    .map(|v| (0..k).map(|j| a[j].iter().zip(v).fold(0, |s, (x, y)| (s + x * y) % p)).collect())
                    .collect();
                let r: Vec<Vec<u64>> = (0..d).map(|s| (0..d).map(|c| images[c][piv[s]]).collect()).collect();
                let cp = mat::charpoly(&r, p);
                let roots = poly::roots(&cp, p);
                let mut total = 0;
                for lam in roots {
                    let shifted: Vec<Vec<u64>> = (0..d)
                        .map(|s| (0..d).map(|c| if s == c { (r[s][c] + p - lam) % p } else { r[s][c] }).collect())
                        .collect();
                    let ns = mat::nullspace(&shifted, p);
                    total += ns.len();
                    let sub: Vec<Vec<u64>> = ns
                        .iter()
                        .map(|u| (0..k).map(|j| u.iter().zip(&b).fold(0, |s, (c, row)| (s + c * row[j]) % p)).collect())
                        .collect();
                    next.push(sub);
                }
                if total != d {
                    return None;
                }
            }
            spaces = next;
        }
        if spaces.iter().any(|s| s.len() != 1) {
            return None;
        }
        Some(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
    }
}

fn admissible_primes(exponent: u64, order: u64) -> impl Iterator<Item = u64> {
    let start = (2 * order) / exponent + 1;
    (start..).map(move |t| t * exponent + 1).filter(|&p| modp::is_prime(p))
}

/// Character table by the modular eigenvector method; retries up to five primes.
pub fn character_table(g: &Group) -> Result<CharacterTable> {
    if g.order() > TABLE_ORDER_CAP {
        return Err(Error::ResourceCap(format!(
            "character table limited to order {TABLE_ORDER_CAP}, got {}",
            g.order()
        )));
    }
    let cls = g.classes();
    let k = cls.len();
    let e = g.exponent() as u64;
    let order = g.order() as u64;
    let members: Vec<Vec<usize>> = {
        let mut m = vec![Vec::new(); k];
        for x in 0..g.order() {
            m[cls.class_of(x)].push(x);
        }
        m
    };
    for p in admissible_primes(e, order).take(5) {
        let dixon = Dixon { g, members: members.clone(), p };
        let Some(vecs) = dixon.eigenvectors() else {
            continue;
        };
        if let Some(table) = lift(g, &vecs, p) {
            return Ok(table);
        }
    }
    Err(Error::Internal(format!("character table of {} did not split", g.label())))
}

fn lift(g: &Group, vecs: &[Vec<u64>], p: u64) -> Option<CharacterTable> {
    let cls = g.classes();
    let k = cls.len();
    let e = g.exponent() as u64;
    let order = g.order() as u64;
    let z = modp::pow_mod(modp::primitive_root(p), (p - 1) / e, p);
    let inv_size: Vec<u64> = (0..k).map(|c| modp::inv_mod(cls.size(c) as u64 % p, p)).collect();
    let powers: Vec<Vec<usize>> = (0..k)
        .map(|c| (0..cls.rep_order(c) as i64).map(|l| cls.power_class(g, c, l)).collect())
        .collect();
    let mut chars = Vec::with_capacity(k);
    for v in vecs {
        if v[0] == 0 {
            return None;
        }
        let n0 = modp::inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * n0 % p).collect();
        let s = (0..k).fold(0, |acc, c| (acc + w[c] * w[cls.inverse_class(c)] % p * inv_size[c]) % p);
        if s == 0 {
            return None;
        }
        let d2 = order % p * modp::inv_mod(s, p) % p;
        let d = (1..).take_while(|d: &u64| d * d <= order).find(|d| d * d % p == d2)?;
        let modvals: Vec<u64> = (0..k).map(|c| d * w[c] % p * inv_size[c] % p).collect();
        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let o = cls.rep_order(c) as u64;
            let zo = modp::pow_mod(z, e / o, p);
            let inv_o = modp::inv_mod(o % p, p);
            let mut counts = vec![0i64; e as usize];
            let mut total = 0u64;
            for j in 0..o {
                let mut m = 0u64;
                for l in 0..o {
                    let t = modp::pow_mod(zo, (o - (j * l) % o) % o, p);
                    m = (m + modvals[powers[c][l as usize]] * t) % p;
                }
                m = m * inv_o % p;
                if m > d {
                    return None;
                }
                total += m;
                counts[(j * (e / o)) as usize] = m as i64;
            }
            if total != d {
                return None;
            }
            values.push(CycloNumber::from_exponents(e as u32, &counts));
        }
        chars.push(ClassFunction::raw(g, values));
    }
    let sum: i64 = chars.iter().map(|c| c.degree().unwrap().pow(2)).sum();
    if sum as u64 != order {
        return None;
    }
    // degree ascending, then values descending so the trivial character leads
    chars.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp_values(a)));
    Some(CharacterTable { group: g.clone(), irreducibles: chars, prime: p })
}

/// Integer multiplicities of the irreducibles (negative allowed).
pub fn multiplicities(chi: &ClassFunction, table: &CharacterTable) -> Result<Vec<i64>> {
    table.irreducibles.iter().map(|psi| inner_product_int(chi, psi)).collect()
}

/// Multiset of irreducible constituents as `(index, multiplicity)`.
pub fn decompose(chi: &ClassFunction, table: &CharacterTable) -> Result<Vec<(usize, i64)>> {
    let m = multiplicities(chi, table)?;
    if let Some(i) = m.iter().position(|&x| x < 0) {
        return Err(Error::NotACharacter(format!("constituent {i} has negative multiplicity")));
    }
    Ok(m.into_iter().enumerate().filter(|(_, x)| *x != 0).collect())
}

/// Recombines multiplicities into a class function.
pub fn recombine(table: &CharacterTable, mult: &[(usize, i64)]) -> ClassFunction {
    let mut acc = ClassFunction::zero(&table.group);
    for &(i, m) in mult {
        acc = acc.add(&table.irreducibles[i].scale(m)).unwrap();
    }
    acc
}

pub fn is_irreducible(chi: &ClassFunction) -> Result<bool> {
    let n = inner_product_rational(chi, chi)?;
    let d = chi.values[0].is_rational();
    Ok(n.is_one() && d.is_some_and(|d| d > BigRational::zero()))
}

/// Whether `chi` is a character, checked against the table.
pub fn is_character(chi: &ClassFunction, table: &CharacterTable) -> bool {
    matches!(multiplicities(chi, table), Ok(m) if m.iter().all(|&x| x >= 0))
}

pub fn induce(emb: &Embedding, chi: &ClassFunction) -> Result<ClassFunction> {
    if !Arc::ptr_eq(chi.group(), &emb.group) {
        return Err(Error::GroupMismatch);
    }
    let parent = emb.parent();
    let pc = parent.classes();
    let hc = emb.group.classes();
    let e = parent.exponent() as u32;
    let fusion = emb.fusion();
    let mut acc = vec![CycloNumber::zero(e); pc.len()];
    for d in 0..hc.len() {
        let t = chi.values[d].scale_int(hc.size(d) as i64);
        acc[fusion[d]] = &acc[fusion[d]] + &t;
    }
    let idx = emb.sub.index() as i64;
    let values = acc
        .into_iter()
        .enumerate()
        .map(|(c, v)| v.scale(&BigRational::new(BigInt::from(idx), BigInt::from(pc.size(c)))))
        .collect();
    ClassFunction::new(parent, values)
}

pub fn restrict(emb: &Embedding, psi: &ClassFunction) -> Result<ClassFunction> {
    if !Arc::ptr_eq(psi.group(), emb.parent()) {
        return Err(Error::GroupMismatch);
    }
    let values = emb.fusion().iter().map(|&c| psi.values[c].clone()).collect();
    ClassFunction::new(&emb.group, values)
}

/// `(chi(g)^2 + chi(g^2)) / 2`.
pub fn sym2(chi: &ClassFunction) -> ClassFunction {
    let sq = chi.tensor(chi).unwrap();
    let ad = chi.adams(2);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    ClassFunction::raw(&chi.group, sq.values.iter().zip(&ad.values).map(|(a, b)| (a + b).scale(&half)).collect())
}

/// `(chi(g)^2 - chi(g^2)) / 2`.
pub fn alt2(chi: &ClassFunction) -> ClassFunction {
    let sq = chi.tensor(chi).unwrap();
    let ad = chi.adams(2);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    ClassFunction::raw(&chi.group, sq.values.iter().zip(&ad.values).map(|(a, b)| (a - b).scale(&half)).collect())
}

fn require_degree(chi: &ClassFunction) -> Result<usize> {
    let d = chi.degree().ok_or_else(|| Error::NotACharacter("degree is not an integer".into()))?;
    if d <= 0 {
        return Err(Error::NotACharacter(format!("degree {d} is not positive")));
    }
    let n = inner_product_rational(chi, chi)?;
    if !n.is_integer() || n <= BigRational::zero() {
        return Err(Error::NotACharacter(format!("<chi,chi> = {n}")));
    }
    Ok(d as usize)
}

/// Elementary symmetric functions of the eigenvalues at a class, via Newton's identities.
fn elementary(chi: &ClassFunction, class: usize, n: usize) -> Vec<CycloNumber> {
    let g = &chi.group;
    let cls = g.classes();
    let e = g.exponent() as u32;
    let pk: Vec<CycloNumber> = (0..=n).map(|k| chi.values[cls.power_class(g, class, k as i64)].clone()).collect();
    let mut el = vec![CycloNumber::one(e)];
    for k in 1..=n {
        let mut acc = CycloNumber::zero(e);
        for i in 1..=k {
            let t = &el[k - i] * &pk[i];
            acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        el.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k as i64))));
    }
    el
}

/// Coefficients of `det(1 - rho(g) T)` at a class, constant term first.
pub fn charpoly_of_class(chi: &ClassFunction, class: usize) -> Result<Vec<CycloNumber>> {
    let n = require_degree(chi)?;
    let el = elementary(chi, class, n);
    Ok(el.iter().enumerate().map(|(k, v)| if k % 2 == 1 { -v } else { v.clone() }).collect())
}

pub fn det_character(chi: &ClassFunction) -> Result<ClassFunction> {
    let n = require_degree(chi)?;
    let k = chi.group.classes().len();
    let values = (0..k).map(|c| elementary(chi, c, n).pop().unwrap()).collect();
    Ok(ClassFunction::raw(&chi.group, values))
}

/// Frobenius-Schur indicator `|G|^-1 sum chi(g^2)`.
pub fn fs_indicator(chi: &ClassFunction) -> Result<i64> {
    let one = ClassFunction::trivial(&chi.group);
    inner_product_int(&chi.adams(2), &one)
}

/// `h -> chi(t h t^-1)` for a subgroup normalised by `t`.
pub fn outer_twist(emb: &Embedding, chi: &ClassFunction, t: usize) -> Result<ClassFunction> {
    if !Arc::ptr_eq(chi.group(), &emb.group) {
        return Err(Error::GroupMismatch);
    }
    let parent = emb.parent();
    let h = &emb.group;
    let hc = h.classes();
    let tinv = parent.inverse(t);
    let mut values = Vec::with_capacity(hc.len());
    for d in 0..hc.len() {
        let x = emb.map[hc.representative(d)];
        let y = parent.product(parent.product(t, x), tinv);
        let loc = emb
            .locate(y)
            .ok_or_else(|| Error::Precondition("twisting element does not normalise the subgroup".into()))?;
        values.push(chi.values[hc.class_of(loc)].clone());
    }
    Ok(ClassFunction::raw(h, values))
}

/// `sym^2(chi) * det(chi)^-1`.
pub fn ad_character(chi: &ClassFunction) -> Result<ClassFunction> {
    let det = det_character(chi)?;
    sym2(chi).tensor(&det.conj())
}

/// Linear characters `nu` with `chi * nu == chi`.
pub fn selftwists(chi: &ClassFunction, table: &CharacterTable) -> Vec<usize> {
    table
        .irreducibles
        .iter()
        .enumerate()
        .filter(|(_, nu)| nu.degree() == Some(1) && chi.tensor(nu).map(|t| &t == chi).unwrap_or(false))
        .map(|(i, _)| i)
        .collect()
}

/// Class function on `target` whose value at `x` is `cf` at `map(x)`.
pub fn transport(cf: &ClassFunction, target: &Group, map: impl Fn(usize) -> usize) -> Result<ClassFunction> {
    let cls = target.classes();
    let values = cls.representatives().iter().map(|&r| cf.at(map(r)).clone()).collect();
    ClassFunction::new(target, values)
}

/// Pull back along a surjection given by `projection` (element-wise).
pub fn inflate(cf: &ClassFunction, target: &Group, projection: &[usize]) -> Result<ClassFunction> {
    transport(cf, target, |x| projection[x])
}

/// Linear characters through the abelianisation, in table order.
pub fn linear_characters(g: &Group) -> Result<Vec<ClassFunction>> {
    let derived = g.whole().derived();
    let q = crate::grp::quotient_by_normal(g, &derived)?;
    let t = character_table(&q.group)?;
    let mut out: Vec<ClassFunction> =
        t.irreducibles().iter().map(|c| inflate(c, g, &q.projection)).collect::<Result<_>>()?;
    out.sort_by(|a, b| b.cmp_values(a));
    Ok(out)
}

/// Elements on which `chi` takes its degree.
pub fn kernel(chi: &ClassFunction) -> Vec<usize> {
    let g = chi.group();
    let d = chi.value(0).clone();
    (0..g.order()).filter(|&x| *chi.at(x) == d).collect()
}

pub fn is_faithful(chi: &ClassFunction) -> bool {
    kernel(chi).len() == 1
}

#[derive(Serialize)]
pub struct TableJson {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub classes: Vec<ClassJson>,
    pub characters: Vec<Vec<String>>,
}

/// Exact row and column orthogonality of a table.
pub fn orthogonality(table: &CharacterTable) -> Result<(bool, bool)> {
    let irr = table.irreducibles();
    let mut rows = true;
    for (i, a) in irr.iter().enumerate() {
        for (j, b) in irr.iter().enumerate() {
            let ip = inner_product(a, b)?;
            rows &= ip == CycloNumber::from_int((i == j) as i64, 1);
        }
    }
    let g = table.group();
    let cls = g.classes();
    let k = cls.len();
    let mut cols = true;
    for x in 0..k {
        for y in 0..k {
            let mut acc = CycloNumber::zero(1);
            for chi in irr {
                let t = chi.value(x) * &chi.value(y).conj();
                acc = &acc + &t;
            }
            let want = if x == y { (g.order() / cls.size(x)) as i64 } else { 0 };
            cols &= acc == CycloNumber::from_int(want, 1);
        }
    }
    Ok((rows, cols))
}

#[derive(Serialize)]
pub struct ClassJson {
    pub size: usize,
    pub order: usize,
    pub representative: String,
}

impl CharacterTable {
    pub fn to_json(&self) -> TableJson {
        let g = &self.group;
        let cls = g.classes();
        TableJson {
            group: g.label().to_string(),
            order: g.order(),
            prime: self.prime,
            classes: (0..cls.len())
                .map(|c| ClassJson {
                    size: cls.size(c),
                    order: cls.rep_order(c),
                    representative: g.element_name(cls.representative(c)),
                })
                .collect(),
            characters: self.irreducibles.iter().map(|c| c.to_strings()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{named_group, subgroups_of_index};

    fn table(name: &str) -> CharacterTable {
        character_table(&named_group(name).unwrap()).unwrap()
    }

    #[test]
    fn s3_table() {
        let t = table("S3");
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        let chi2: Vec<i64> = t.irreducible(2).values().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(chi2, vec![2, 0, -1]);
    }

    #[test]
    fn degrees_of_small_groups() {
        assert_eq!(table("S4").degrees(), vec![1, 1, 2, 3, 3]);
        assert_eq!(table("A4").degrees(), vec![1, 1, 1, 3]);
        assert_eq!(table("Q8").degrees(), vec![1, 1, 1, 1, 2]);
        assert_eq!(table("SL(2,3)").degrees(), vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(table("GL(2,3)").degrees(), vec![1, 1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(table("A5").degrees(), vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn orthogonality_a5() {
        let t = table("A5");
        for (i, a) in t.irreducibles().iter().enumerate() {
            for (j, b) in t.irreducibles().iter().enumerate() {
                let ip = inner_product_rational(a, b).unwrap();
                assert_eq!(ip, BigRational::from_integer(BigInt::from((i == j) as i64)));
            }
        }
    }

    #[test]
    fn fs_indicators() {
        let q8 = table("Q8");
        assert_eq!(fs_indicator(q8.irreducible(4)).unwrap(), -1);
        let s4 = table("S4");
        for chi in s4.irreducibles() {
            assert_eq!(fs_indicator(chi).unwrap(), 1);
        }
        let a4 = table("A4");
        let ind: Vec<i64> = a4.irreducibles().iter().map(|c| fs_indicator(c).unwrap()).collect();
        assert_eq!(ind, vec![1, 0, 0, 1]);
    }

    #[test]
    fn frobenius_reciprocity_s4_a4() {
        let g = named_group("S4").unwrap();
        let tg = character_table(&g).unwrap();
        let emb = subgroups_of_index(&g, 2).unwrap().remove(0).embed();
        let th = character_table(&emb.group).unwrap();
        for chi in th.irreducibles() {
            let ind = induce(&emb, chi).unwrap();
            for psi in tg.irreducibles() {
                let res = restrict(&emb, psi).unwrap();
                assert_eq!(inner_product(&ind, psi).unwrap(), inner_product(chi, &res).unwrap());
            }
        }
    }

    #[test]
    fn det_and_charpoly() {
        let t = table("S4");
        let std = t.irreducible(3);
        let det = det_character(std).unwrap();
        assert!(t.index_of(&det).is_some());
        let cp = charpoly_of_class(std, 0).unwrap();
        // (1 - T)^3
        let c: Vec<i64> = cp.iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(c, vec![1, -3, 3, -1]);
        let bad = std.scale(1).add(&ClassFunction::constant(t.group(), 0)).unwrap().scale(-1);
        assert!(charpoly_of_class(&bad, 0).is_err());
    }

    #[test]
    fn sym_alt_degrees() {
        let t = table("SL(2,3)");
        let tau = t.irreducible(3);
        assert_eq!(sym2(tau).degree(), Some(3));
        assert_eq!(alt2(tau).degree(), Some(1));
        assert_eq!(alt2(tau), det_character(tau).unwrap());
    }

    #[test]
    fn decompose_regular() {
        let g = named_group("S4").unwrap();
        let t = character_table(&g).unwrap();
        let mut vals = vec![CycloNumber::zero(12); 5];
        vals[0] = CycloNumber::from_int(24, 12);
        let reg = ClassFunction::new(&g, vals).unwrap();
        let d = decompose(&reg, &t).unwrap();
        assert_eq!(d, vec![(0, 1), (1, 1), (2, 2), (3, 3), (4, 3)]);
        assert_eq!(recombine(&t, &d), reg);
    }

    #[test]
    fn non_integral_rejected() {
        let g = named_group("S3").unwrap();
        let t = character_table(&g).unwrap();
        let f = ClassFunction::new(&g, vec![CycloNumber::from_int(1, 6), CycloNumber::zero(6), CycloNumber::zero(6)]).unwrap();
        assert!(matches!(decompose(&f, &t), Err(Error::NotACharacter(_))));
    }
}
