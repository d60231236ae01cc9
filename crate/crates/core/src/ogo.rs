//! Orthogonal similitudes: the similitude factor and norm, the map
//! `GL2 x GL2 -> GO4`, the two double covers of `S4`, GO(4)-extensions built
//! from a faithful two-dimensional character, and odd-degree monomialisation.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::chr::{
    self, character_table, induce, inner_product_int, is_faithful, is_irreducible, linear_characters,
    sym2, transport, CharacterTable, ClassFunction,
};
use crate::cyc::CycloNumber;
use crate::error::{Error, Result};
use crate::grp::{self, closure, Embedding, Group, Subgroup, ORDER_CAP};

/// Square matrix over a cyclotomic field, as rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilitudeMatrix {
    pub rows: Vec<Vec<CycloNumber>>,
}

impl SimilitudeMatrix {
    pub fn new(rows: Vec<Vec<CycloNumber>>) -> Result<SimilitudeMatrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input("matrix must be square and non-empty".into()));
        }
        Ok(SimilitudeMatrix { rows })
    }

    pub fn identity(n: usize) -> SimilitudeMatrix {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| CycloNumber::from_int((i == j) as i64, 1)).collect())
            .collect();
        SimilitudeMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> SimilitudeMatrix {
        let n = self.dim();
        SimilitudeMatrix { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect() }
    }

    pub fn mul(&self, other: &SimilitudeMatrix) -> SimilitudeMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = CycloNumber::zero(1);
                        for k in 0..n {
                            let a = &self.rows[i][k];
                            let b = &other.rows[k][j];
                            if !a.is_zero() && !b.is_zero() {
                                acc = &acc + &(a * b);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        SimilitudeMatrix { rows }
    }

    pub fn scale(&self, c: &CycloNumber) -> SimilitudeMatrix {
        SimilitudeMatrix { rows: self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn trace(&self) -> CycloNumber {
        (0..self.dim()).fold(CycloNumber::zero(1), |acc, i| &acc + &self.rows[i][i])
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> CycloNumber {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut det = CycloNumber::one(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return CycloNumber::zero(1);
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("nonzero pivot");
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
        det
    }

    /// Scalar `c` if the matrix is `c` times the identity.
    pub fn as_scalar(&self) -> Option<CycloNumber> {
        let n = self.dim();
        let c = self.rows[0][0].clone();
        for i in 0..n {
            for j in 0..n {
                let ok = if i == j { self.rows[i][j] == c } else { self.rows[i][j].is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Rows separated by `;`; entries are cyclotomic text or bare rationals.
    pub fn parse(s: &str) -> Result<SimilitudeMatrix> {
        let rows = s
            .split(';')
            .map(|row| tokenize_entries(row)?.iter().map(|t| t.parse::<CycloNumber>()).collect())
            .collect::<Result<Vec<Vec<CycloNumber>>>>()?;
        SimilitudeMatrix::new(rows)
    }
}

fn tokenize_entries(row: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let chars: Vec<char> = row.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        let start = i;
        if c == '(' {
            while i < chars.len() && chars[i] != ')' {
                i += 1;
            }
            if i == chars.len() {
                return Err(Error::Parse(format!("unclosed entry in `{row}`")));
            }
            i += 1;
            // expect `@ zeta_n`
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '@' {
                i += 1;
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
            } else {
                return Err(Error::Parse(format!("missing conductor in `{row}`")));
            }
        } else {
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != ',' {
                i += 1;
            }
        }
        out.push(chars[start..i].iter().collect());
    }
    if out.is_empty() {
        return Err(Error::Parse("empty matrix row".into()));
    }
    Ok(out)
}

/// `lambda` with `M^t M = lambda I`.
pub fn similitude_factor(m: &SimilitudeMatrix) -> Result<CycloNumber> {
    m.transpose()
        .mul(m)
        .as_scalar()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Precondition("matrix is not a similitude of the standard form".into()))
}

/// `lambda^-m det M` for a similitude of even size `2m`.
pub fn similitude_norm(m: &SimilitudeMatrix) -> Result<CycloNumber> {
    let n = m.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::Input("similitude norm needs even size".into()));
    }
    let lam = similitude_factor(m)?;
    m.det().div(&lam.pow((n / 2) as u64))
}

/// `beta(g, g')`: the action `X -> g^t X g'` on 2x2 matrices, written in the
/// basis `I, diag(i,-i), [[0,1],[-1,0]], [[0,i],[i,0]]`, orthonormal for `det`.
pub fn beta_map(g: &SimilitudeMatrix, gp: &SimilitudeMatrix) -> Result<SimilitudeMatrix> {
    if g.dim() != 2 || gp.dim() != 2 {
        return Err(Error::Input("beta_map takes 2x2 matrices".into()));
    }
    let i = CycloNumber::root_of_unity(4, 1);
    let one = CycloNumber::one(4);
    let zero = CycloNumber::zero(4);
    let basis = [
        [one.clone(), zero.clone(), zero.clone(), one.clone()],
        [i.clone(), zero.clone(), zero.clone(), -&i],
        [zero.clone(), one.clone(), -&one, zero.clone()],
        [zero.clone(), i.clone(), i.clone(), zero.clone()],
    ];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let minus_half_i = (-&i).scale(&half);
    let gt = g.transpose();
    let mut cols = Vec::new();
    for e in &basis {
        let x = SimilitudeMatrix { rows: vec![vec![e[0].clone(), e[1].clone()], vec![e[2].clone(), e[3].clone()]] };
        let y = gt.mul(&x).mul(gp);
        let (a, b, c, d) = (&y.rows[0][0], &y.rows[0][1], &y.rows[1][0], &y.rows[1][1]);
        cols.push(vec![
            (a + d).scale(&half),
            &(a - d) * &minus_half_i,
            (b - c).scale(&half),
            &(b + c) * &minus_half_i,
        ]);
    }
    SimilitudeMatrix::new((0..4).map(|r| (0..4).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Matrix of `X -> X^t` in the same basis; a similitude of norm `-1`.
pub fn transpose_involution() -> SimilitudeMatrix {
    let rows = (0..4)
        .map(|r| (0..4).map(|c| CycloNumber::from_int(if r != c { 0 } else if r == 2 { -1 } else { 1 }, 1)).collect())
        .collect();
    SimilitudeMatrix { rows }
}

/// Writes an odd-size similitude as `c * O` with `O` of determinant one and `c^2 = lambda`.
/// Needs `lambda` to be a rational square times a root of unity.
pub fn odd_similitude_split(m: &SimilitudeMatrix) -> Result<(SimilitudeMatrix, CycloNumber)> {
    let n = m.dim();
    if n.is_multiple_of(2) {
        return Err(Error::Input("odd size required".into()));
    }
    let lam = similitude_factor(m)?;
    let c = sqrt_root_of_unity_times_square(&lam)
        .ok_or_else(|| Error::Precondition("similitude factor has no cyclotomic square root".into()))?;
    let cinv = c.inverse()?;
    let mut o = m.scale(&cinv);
    if o.det() != CycloNumber::one(1) {
        o = o.scale(&CycloNumber::from_int(-1, 1));
        let c = -c;
        return Ok((o, c));
    }
    Ok((o, c))
}

/// Square root of `q * zeta` with `q` a positive rational square.
pub fn sqrt_root_of_unity_times_square(x: &CycloNumber) -> Option<CycloNumber> {
    let norm = (x * &x.conj()).is_rational()?;
    if !norm.is_positive() {
        return None;
    }
    let q = rational_sqrt(&norm)?;
    let unit = x.scale(&q.recip());
    let n = unit.conductor() as i64;
    let m = 2 * n;
    for k in 0..n {
        if CycloNumber::root_of_unity(n as u32, k) == unit {
            let r = rational_sqrt(&q)?;
            return Some(CycloNumber::root_of_unity(m as u32, k).scale(&r));
        }
    }
    None
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(int_sqrt(q.numer())?, int_sqrt(q.denom())?))
}

/// Element of a GO(4)-extension: `(h1, h2)` swapped by the third coordinate.
pub type Go4Element = (usize, usize, bool);

/// `((H x H)/C) x| <s>` with `s` swapping the factors and `C` embedded as `c -> (c, c^-1)`.
pub struct Go4Extension {
    pub h: Group,
    pub tau: ClassFunction,
    pub c: Subgroup,
    pub group: Group,
    pub elements: Vec<Go4Element>,
    /// The unswapped part, of index two.
    pub index_two: Subgroup,
    /// `tau(h1) tau(h2)` on the unswapped part, `tau(h1 h2)` off it.
    pub asai4: ClassFunction,
    /// The similitude character `omega(h1) omega(h2)`, trivial on the swap.
    pub similitude: ClassFunction,
}

pub fn go4_extension(h: &Group, tau: &ClassFunction, c: &Subgroup) -> Result<Go4Extension> {
    if !Arc::ptr_eq(tau.group(), h) || !Arc::ptr_eq(c.parent(), h) {
        return Err(Error::GroupMismatch);
    }
    if tau.degree() != Some(2) || !is_irreducible(tau)? || !is_faithful(tau) {
        return Err(Error::Precondition("tau must be a faithful irreducible character of degree 2".into()));
    }
    let four = CycloNumber::from_int(4, 1);
    for &z in c.members() {
        let central = h.generators().iter().all(|&s| h.product(z, s) == h.product(s, z));
        let v = tau.at(z);
        if !central || (v * &v.conj()) != four {
            return Err(Error::Precondition("C must be central and act by scalars".into()));
        }
    }
    let cm: Vec<usize> = c.members().to_vec();
    let norm = |x: (usize, usize, bool)| -> Go4Element {
        cm.iter()
            .map(|&z| (h.product(x.0, z), h.product(x.1, h.inverse(z)), x.2))
            .min()
            .unwrap()
    };
    let mul = |a: &Go4Element, b: &Go4Element| -> Go4Element {
        let (k1, k2) = if a.2 { (b.1, b.0) } else { (b.0, b.1) };
        norm((h.product(a.0, k1), h.product(a.1, k2), a.2 ^ b.2))
    };
    let inv = |a: &Go4Element| -> Go4Element {
        // (h1,h2,s)^-1 = (h2^-1, h1^-1, s) when swapped
        if a.2 {
            norm((h.inverse(a.1), h.inverse(a.0), true))
        } else {
            norm((h.inverse(a.0), h.inverse(a.1), false))
        }
    };
    let mut gens: Vec<Go4Element> = h.generators().iter().map(|&x| norm((x, 0, false))).collect();
    gens.extend(h.generators().iter().map(|&x| norm((0, x, false))));
    gens.push(norm((0, 0, true)));
    let label = format!("GO4({})", h.label());
    let (g, elements) = closure(&label, norm((0, 0, false)), &gens, mul, inv, ORDER_CAP)?;
    let g = Arc::new(g);
    if g.order() != 2 * h.order() * h.order() / c.order() {
        return Err(Error::Internal("GO(4) extension has the wrong order".into()));
    }
    let unswapped: Vec<usize> = (0..g.order()).filter(|&i| !elements[i].2).collect();
    let index_two = Subgroup::from_members(&g, &unswapped)?;
    let asai4 = ClassFunction::from_element_fn(&g, |i| {
        let (a, b, s) = elements[i];
        if s {
            tau.at(h.product(a, b)).clone()
        } else {
            tau.at(a) * tau.at(b)
        }
    })?;
    let omega = chr::det_character(tau)?;
    let similitude = ClassFunction::from_element_fn(&g, |i| {
        let (a, b, _) = elements[i];
        omega.at(a) * omega.at(b)
    })?;
    Ok(Go4Extension { h: h.clone(), tau: tau.clone(), c: c.clone(), group: g, elements, index_two, asai4, similitude })
}

impl Go4Extension {
    /// The same construction with trivial `C`, and the projection onto this group.
    pub fn cover(&self) -> Result<(Go4Extension, Vec<usize>)> {
        let big = go4_extension(&self.h, &self.tau, &self.h.trivial())?;
        let locate: HashMap<Go4Element, usize> =
            self.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let cm = self.c.members();
        let h = &self.h;
        let projection = big
            .elements
            .iter()
            .map(|&(a, b, s)| {
                let e = cm
                    .iter()
                    .map(|&z| (h.product(a, z), h.product(b, h.inverse(z)), s))
                    .min()
                    .unwrap();
                locate[&e]
            })
            .collect();
        Ok((big, projection))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Tilde,
    Hat,
}

pub struct DoubleCover {
    pub kind: CoverKind,
    pub group: Group,
    pub tau: ClassFunction,
    pub center: Subgroup,
    pub quotient: grp::Quotient,
    /// Order of the lifts of transpositions.
    pub transposition_lift_order: usize,
}

fn first_faithful_degree_two(table: &CharacterTable) -> Result<ClassFunction> {
    table
        .irreducibles()
        .iter()
        .find(|c| c.degree() == Some(2) && is_faithful(c))
        .cloned()
        .ok_or_else(|| Error::CheckFailed("no faithful degree-2 character".into()))
}

/// The two double covers of `S4`: `GL(2,3)`, and the group generated by the
/// binary tetrahedral part and `i` times a lifted transposition inside
/// `Z/4 x_{+-1} GL(2,3)`.
pub fn double_cover_s4(kind: CoverKind) -> Result<DoubleCover> {
    let group = match kind {
        CoverKind::Tilde => Arc::new(grp::matrix_group_mod_p("S4tilde", 3, &[[1, 1, 0, 1], [1, 0, 1, 1], [1, 0, 0, 2]])?),
        CoverKind::Hat => {
            // pairs (k, M) with (k, M) ~ (k + 2, -M); k counts powers of i
            let neg = |m: [u32; 4]| m.map(|x| (3 - x) % 3);
            let mm = |a: [u32; 4], b: [u32; 4]| {
                [
                    (a[0] * b[0] + a[1] * b[2]) % 3,
                    (a[0] * b[1] + a[1] * b[3]) % 3,
                    (a[2] * b[0] + a[3] * b[2]) % 3,
                    (a[2] * b[1] + a[3] * b[3]) % 3,
                ]
            };
            let norm = move |(k, m): (u32, [u32; 4])| if k % 4 >= 2 { (k % 4 - 2, neg(m)) } else { (k % 4, m) };
            let mul = move |a: &(u32, [u32; 4]), b: &(u32, [u32; 4])| norm((a.0 + b.0, mm(a.1, b.1)));
            let inv = move |a: &(u32, [u32; 4])| {
                // brute force over the finite set: a^(order-1)
                let mut x = *a;
                let mut prev = (0u32, [1, 0, 0, 1]);
                while x != (0, [1, 0, 0, 1]) {
                    prev = x;
                    x = mul(&x, a);
                }
                prev
            };
            let gens = vec![(0, [1, 1, 0, 1]), (0, [1, 0, 1, 1]), (1, [1, 0, 0, 2])];
            Arc::new(closure("S4hat", (0u32, [1u32, 0, 0, 1]), &gens, mul, inv, ORDER_CAP)?.0)
        }
    };
    let table = character_table(&group)?;
    let tau = first_faithful_degree_two(&table)?;
    let center = group.center();
    if group.order() != 48 || center.order() != 2 {
        return Err(Error::CheckFailed("double cover has wrong order or centre".into()));
    }
    let quotient = grp::quotient_by_normal(&group, &center)?;
    let s4 = grp::named_group("S4")?;
    let census = |g: &Group| {
        let c = g.classes();
        let mut v: Vec<(usize, usize)> = (0..c.len()).map(|i| (c.rep_order(i), c.size(i))).collect();
        v.sort();
        v
    };
    if census(&quotient.group) != census(&s4) {
        return Err(Error::CheckFailed("quotient by the centre is not S4".into()));
    }
    let qc = quotient.group.classes();
    let transp = (0..qc.len())
        .find(|&c| qc.rep_order(c) == 2 && qc.size(c) == 6)
        .ok_or_else(|| Error::CheckFailed("no transposition class".into()))?;
    let lift_orders: Vec<usize> = (0..group.order())
        .filter(|&x| qc.class_of(quotient.projection[x]) == transp)
        .map(|x| group.element_order(x))
        .collect();
    let expected = match kind {
        CoverKind::Tilde => 2,
        CoverKind::Hat => 4,
    };
    if lift_orders.iter().any(|&o| o != expected) {
        return Err(Error::CheckFailed(format!("transposition lifts have orders {lift_orders:?}")));
    }
    Ok(DoubleCover { kind, group, tau, center, quotient, transposition_lift_order: expected })
}

/// A linear `lambda` with `<sym^2 chi, lambda> >= 1`: an invariant symmetric
/// form up to `lambda`. Returns its index in `linear_characters`.
pub fn is_go_type(chi: &ClassFunction) -> Result<Option<(usize, ClassFunction)>> {
    let s = sym2(chi);
    for (i, lam) in linear_characters(chi.group())?.into_iter().enumerate() {
        if inner_product_int(&s, &lam)? >= 1 {
            return Ok(Some((i, lam)));
        }
    }
    Ok(None)
}

/// Degree-2 character `tau` and linear `chi` with `Ad(tau) chi = chi3`, searching this group only.
pub fn ad_realize_so3(chi3: &ClassFunction, table: &CharacterTable) -> Result<Option<(usize, usize)>> {
    if chi3.degree() != Some(3) {
        return Err(Error::Input("expected a degree-3 character".into()));
    }
    let lin = table.of_degree(1);
    for (ti, tau) in table.of_degree(2) {
        let ad = chr::ad_character(tau)?;
        for &(li, lam) in &lin {
            if &ad.tensor(lam)? == chi3 {
                return Ok(Some((ti, li)));
            }
        }
    }
    Ok(None)
}

/// `chi = Ind_S^G lambda` for a linear `lambda` of a subgroup `S`.
pub struct MonomialWitness {
    pub subgroup: Subgroup,
    pub embedding: Embedding,
    pub lambda: ClassFunction,
    /// Orders of the groups visited by the descent.
    pub chain: Vec<usize>,
    pub via_fallback: bool,
}

/// Irreducible constituents of `Res_N psi`, as indices into the table of `N`.
fn restriction_constituents(n: &Embedding, n_table: &CharacterTable, psi: &ClassFunction) -> Result<Vec<usize>> {
    let r = chr::restrict(n, psi)?;
    Ok(chr::decompose(&r, n_table)?.into_iter().map(|(i, _)| i).collect())
}

/// Clifford descent for an odd-degree faithful irreducible character of a solvable group,
/// falling back to an exhaustive search over subgroups of index `chi(1)`.
pub fn monomialize_odd(g: &Group, chi: &ClassFunction) -> Result<MonomialWitness> {
    if !Arc::ptr_eq(chi.group(), g) {
        return Err(Error::GroupMismatch);
    }
    if !grp::is_solvable(g) {
        return Err(Error::Precondition("group is not solvable".into()));
    }
    let deg = chi.degree().filter(|d| d % 2 == 1).ok_or_else(|| Error::Precondition("degree must be odd".into()))?;
    if !is_irreducible(chi)? || !is_faithful(chi) {
        return Err(Error::Precondition("character must be faithful and irreducible".into()));
    }
    if chr::fs_indicator(chi)? < 0 {
        return Err(Error::Precondition("Frobenius-Schur indicator is negative".into()));
    }
    if is_go_type(chi)?.is_none() {
        return Err(Error::Precondition("character has no invariant symmetric form".into()));
    }
    let witness = match clifford_descent(g, chi)? {
        Some(w) => w,
        None => fallback_monomial(g, chi, deg as usize, false)?
            .ok_or_else(|| Error::SearchExhausted("character is not monomial".into()))?,
    };
    let ind = induce(&witness.embedding, &witness.lambda)?;
    if &ind != chi {
        return Err(Error::CheckFailed("induced character differs from the input".into()));
    }
    if chi.is_self_dual() && !is_quadratic(&witness.lambda) {
        // the descent found a non-quadratic inducing character; look for a quadratic one
        return fallback_monomial(g, chi, deg as usize, true)?
            .ok_or_else(|| Error::CheckFailed("self-dual character not induced from a quadratic character".into()));
    }
    Ok(witness)
}

fn is_quadratic(lam: &ClassFunction) -> bool {
    let sq = lam.tensor(lam).unwrap();
    sq == ClassFunction::trivial(lam.group())
}

fn fallback_monomial(g: &Group, chi: &ClassFunction, deg: usize, need_quadratic: bool) -> Result<Option<MonomialWitness>> {
    for s in grp::subgroups_of_index(g, deg)? {
        let emb = s.embed();
        for lam in linear_characters(&emb.group)? {
            if need_quadratic && !is_quadratic(&lam) {
                continue;
            }
            if &induce(&emb, &lam)? == chi {
                let order = s.order();
                return Ok(Some(MonomialWitness {
                    subgroup: s,
                    embedding: emb,
                    lambda: lam,
                    chain: vec![g.order(), order],
                    via_fallback: true,
                }));
            }
        }
    }
    Ok(None)
}

fn clifford_descent(g: &Group, chi: &ClassFunction) -> Result<Option<MonomialWitness>> {
    let mut cur_sub = g.whole();
    let mut cur_emb = cur_sub.embed();
    let mut psi = transport(chi, &cur_emb.group, |x| cur_emb.map[x])?;
    let mut chain = vec![g.order()];
    while psi.degree() != Some(1) {
        let s = cur_emb.group.clone();
        let ker = Subgroup::from_members(&s, &chr::kernel(&psi))?;
        let q = grp::quotient_by_normal(&s, &ker)?;
        let series = grp::derived_series(&q.group);
        let d = series.iter().rev().find(|t| t.order() > 1).cloned();
        let Some(d) = d else {
            return Ok(None);
        };
        let primes = grp::prime_factors(d.order());
        let mut stepped = false;
        for p in primes {
            let a_members: Vec<usize> =
                d.members().iter().copied().filter(|&x| q.group.power(x, p as i64) == 0).collect();
            let n_members: Vec<usize> = (0..s.order()).filter(|&x| a_members.contains(&q.projection[x])).collect();
            let n = Subgroup::from_members(&s, &n_members)?;
            let n_emb = n.embed();
            let n_table = character_table(&n_emb.group)?;
            let cons = restriction_constituents(&n_emb, &n_table, &psi)?;
            if cons.len() < 2 {
                continue;
            }
            let theta = n_table.irreducible(cons[0]);
            // inertia group of theta in S
            let nc = n_emb.group.classes();
            let inertia: Vec<usize> = (0..s.order())
                .filter(|&x| {
                    nc.representatives().iter().all(|&r| {
                        let y = s.conjugate(n_emb.map[r], x);
                        theta.at(n_emb.locate(y).unwrap()) == theta.value(nc.class_of(r))
                    })
                })
                .collect();
            let t = Subgroup::from_members(&s, &inertia)?;
            let t_emb = t.embed();
            let t_table = character_table(&t_emb.group)?;
            let target = psi.degree().unwrap() / t.index() as i64;
            let Some(phi) = t_table
                .of_degree(target)
                .into_iter()
                .map(|(_, c)| c)
                .find(|c| induce(&t_emb, c).map(|ind| ind == psi).unwrap_or(false))
            else {
                continue;
            };
            // move to T as a subgroup of G
            let t_in_g = cur_emb.push_forward(&t);
            let next_emb = t_in_g.embed();
            let next_psi = transport(phi, &next_emb.group, |x| {
                t_emb.locate(cur_emb.locate(next_emb.map[x]).unwrap()).unwrap()
            })?;
            chain.push(t_in_g.order());
            cur_sub = t_in_g;
            cur_emb = next_emb;
            psi = next_psi;
            stepped = true;
            break;
        }
        if !stepped {
            return Ok(None);
        }
    }
    Ok(Some(MonomialWitness { subgroup: cur_sub, embedding: cur_emb, lambda: psi, chain, via_fallback: false }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::named_group;

    fn m2(a: &str, b: &str, c: &str, d: &str) -> SimilitudeMatrix {
        SimilitudeMatrix::new(vec![vec![a.parse().unwrap(), b.parse().unwrap()], vec![c.parse().unwrap(), d.parse().unwrap()]])
            .unwrap()
    }

    #[test]
    fn factor_and_norm_of_simple_matrices() {
        let m = SimilitudeMatrix::parse("2 0; 0 2").unwrap();
        assert_eq!(similitude_factor(&m).unwrap(), CycloNumber::from_int(4, 1));
        let r = SimilitudeMatrix::parse("0 1; 1 0").unwrap();
        assert_eq!(similitude_norm(&r).unwrap(), CycloNumber::from_int(-1, 1));
        assert!(similitude_factor(&SimilitudeMatrix::parse("1 1; 0 1").unwrap()).is_err());
    }

    #[test]
    fn beta_has_norm_one_and_composes() {
        let i = "(0, 1) @ zeta_4";
        let mi = "(0, -1) @ zeta_4";
        let gi = m2(i, "0", "0", mi);
        let gj = m2("0", "1", "-1", "0");
        let g3 = m2("1", "1", "0", "2");
        for (a, b) in [(&gi, &gj), (&gj, &g3), (&g3, &gi)] {
            let bm = beta_map(a, b).unwrap();
            let lam = similitude_factor(&bm).unwrap();
            assert_eq!(lam, &a.det() * &b.det());
            assert_eq!(similitude_norm(&bm).unwrap(), CycloNumber::one(1));
        }
        // beta(g, g') beta(h, h') = beta(h g, h' g')
        let lhs = beta_map(&gi, &gj).unwrap().mul(&beta_map(&g3, &gi).unwrap());
        let rhs = beta_map(&g3.mul(&gi), &gi.mul(&gj)).unwrap();
        assert_eq!(lhs, rhs);
        let s = transpose_involution();
        assert_eq!(similitude_norm(&s).unwrap(), CycloNumber::from_int(-1, 1));
        let swapped = s.mul(&beta_map(&gi, &g3).unwrap()).mul(&s);
        assert_eq!(swapped, beta_map(&g3, &gi).unwrap());
    }

    #[test]
    fn odd_split() {
        let z = "(0, 1) @ zeta_3";
        let m = SimilitudeMatrix::parse(&format!("0 {z} 0; 0 0 {z}; {z} 0 0")).unwrap();
        let (o, c) = odd_similitude_split(&m).unwrap();
        assert_eq!(o.det(), CycloNumber::one(1));
        assert_eq!(o.scale(&c), m);
        assert_eq!(similitude_factor(&o).unwrap(), CycloNumber::one(1));
    }

    #[test]
    fn covers() {
        let t = double_cover_s4(CoverKind::Tilde).unwrap();
        assert_eq!(t.transposition_lift_order, 2);
        let h = double_cover_s4(CoverKind::Hat).unwrap();
        assert_eq!(h.transposition_lift_order, 4);
        assert_eq!(h.group.order(), 48);
    }

    #[test]
    fn go4_over_q8() {
        let q8 = named_group("Q8").unwrap();
        let t = character_table(&q8).unwrap();
        let tau = t.irreducible(4).clone();
        let ext = go4_extension(&q8, &tau, &q8.center()).unwrap();
        assert_eq!(ext.group.order(), 64);
        assert!(is_irreducible(&ext.asai4).unwrap());
        let (lam_idx, lam) = is_go_type(&ext.asai4).unwrap().unwrap();
        let _ = lam_idx;
        assert_eq!(lam, ext.similitude);
        let (cover, proj) = ext.cover().unwrap();
        assert_eq!(cover.group.order(), 128);
        let pulled = chr::inflate(&ext.asai4, &cover.group, &proj).unwrap();
        assert_eq!(pulled, cover.asai4);
    }

    #[test]
    fn monomial_examples() {
        let s4 = named_group("S4").unwrap();
        let t = character_table(&s4).unwrap();
        let w = monomialize_odd(&s4, t.irreducible(3)).unwrap();
        assert_eq!(w.subgroup.order(), 8);
        assert!(is_quadratic(&w.lambda));
        let a4 = named_group("A4").unwrap();
        let t = character_table(&a4).unwrap();
        let w = monomialize_odd(&a4, t.irreducible(3)).unwrap();
        assert_eq!(w.subgroup.order(), 4);
        assert!(is_quadratic(&w.lambda));
        assert!(monomialize_odd(&s4, t.irreducible(3)).is_err());
    }

    #[test]
    fn go_type_of_q8() {
        let q8 = named_group("Q8").unwrap();
        let t = character_table(&q8).unwrap();
        let (i, _) = is_go_type(t.irreducible(4)).unwrap().unwrap();
        assert_ne!(i, 0);
    }

    #[test]
    fn ad_realisation_in_s4() {
        let s4 = named_group("S4").unwrap();
        let t = character_table(&s4).unwrap();
        // the standard character is Ad of the 2-dim rep twisted? only through S4tilde
        let found = ad_realize_so3(t.irreducible(3), &t).unwrap();
        assert!(found.is_none());
        let cover = double_cover_s4(CoverKind::Tilde).unwrap();
        let ct = character_table(&cover.group).unwrap();
        let hits = ct.of_degree(3).iter().filter(|(_, c)| ad_realize_so3(c, &ct).unwrap().is_some()).count();
        assert!(hits >= 1);
    }
}
