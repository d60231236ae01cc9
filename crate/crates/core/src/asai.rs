//! The Asai character of a degree-2 character of an index-2 subgroup, its
//! twist and restriction laws, the dihedral cuspidality criterion and the
//! GO(4) classification.

use std::sync::Arc;

use serde::Serialize;

use crate::chr::{
    self, alt2, character_table, decompose, det_character, induce, inner_product_int, is_irreducible, linear_characters,
    outer_twist, restrict, sym2, transport, CharacterTable, ClassFunction,
};
use crate::cyc::CycloNumber;
use crate::error::{Error, Result};
use crate::grp::{self, Embedding, Group, Subgroup};

/// `sigma` of degree 2 on an index-2 subgroup `H` of `G`.
#[derive(Clone)]
pub struct AsaiSetup {
    pub table: Arc<CharacterTable>,
    pub h: Arc<Embedding>,
    pub sigma: ClassFunction,
    /// Linear character of `G` with kernel `H`.
    pub delta: ClassFunction,
    /// A fixed element outside `H`.
    pub theta: usize,
}

impl AsaiSetup {
    pub fn new(table: Arc<CharacterTable>, h: Arc<Embedding>, sigma: ClassFunction) -> Result<AsaiSetup> {
        let g = table.group().clone();
        if !Arc::ptr_eq(h.parent(), &g) || !Arc::ptr_eq(sigma.group(), &h.group) {
            return Err(Error::GroupMismatch);
        }
        if h.sub.index() != 2 {
            return Err(Error::Precondition("H must have index 2".into()));
        }
        if sigma.degree() != Some(2) || inner_product_int(&sigma, &sigma).is_err() {
            return Err(Error::Precondition("sigma must be a degree-2 character".into()));
        }
        let theta = (0..g.order()).find(|&x| !h.sub.contains(x)).unwrap();
        let delta = ClassFunction::from_element_fn(&g, |x| CycloNumber::from_int(if h.sub.contains(x) { 1 } else { -1 }, 1))?;
        Ok(AsaiSetup { table, h, sigma, delta, theta })
    }

    pub fn group(&self) -> &Group {
        self.table.group()
    }

    /// `h -> sigma(theta h theta^-1)`.
    pub fn sigma_theta(&self) -> Result<ClassFunction> {
        outer_twist(&self.h, &self.sigma, self.theta)
    }

    pub fn with_sigma(&self, sigma: ClassFunction) -> Result<AsaiSetup> {
        AsaiSetup::new(self.table.clone(), self.h.clone(), sigma)
    }
}

/// `Lambda^2(Ind sigma) - Ind(det sigma)`; fails if the difference is not a character.
pub fn asai_character(s: &AsaiSetup) -> Result<ClassFunction> {
    let ind = induce(&s.h, &s.sigma)?;
    let as_ = alt2(&ind).sub(&induce(&s.h, &det_character(&s.sigma)?)?)?;
    decompose(&as_, &s.table).map_err(|e| Error::CheckFailed(format!("Asai difference is not a character: {e}")))?;
    Ok(as_)
}

/// `det(Ind chi) * delta`, the transfer of a linear character of `H`.
pub fn transfer_character(s: &AsaiSetup, chi: &ClassFunction) -> Result<ClassFunction> {
    if chi.degree() != Some(1) {
        return Err(Error::Input("transfer needs a linear character".into()));
    }
    det_character(&induce(&s.h, chi)?)?.tensor(&s.delta)
}

pub fn asai_is_irreducible(s: &AsaiSetup) -> Result<bool> {
    is_irreducible(&asai_character(s)?)
}

/// All degree-2 characters: irreducibles, then sums of two linear characters.
pub fn degree_two_characters(table: &CharacterTable) -> Vec<ClassFunction> {
    let mut out: Vec<ClassFunction> = table.of_degree(2).into_iter().map(|(_, c)| c.clone()).collect();
    let lin = table.linear_characters();
    for i in 0..lin.len() {
        for j in i..lin.len() {
            out.push(lin[i].add(lin[j]).unwrap());
        }
    }
    out
}

/// A character of `G` of the same degree restricting to `tau`, chosen among
/// sub-multisets of the constituents of `Ind tau`.
pub fn extension_test(table: &CharacterTable, m: &Embedding, tau: &ClassFunction) -> Result<Option<ClassFunction>> {
    if !Arc::ptr_eq(m.parent(), table.group()) {
        return Err(Error::GroupMismatch);
    }
    let deg = tau.degree().ok_or_else(|| Error::NotACharacter("degree is not an integer".into()))?;
    let cons = decompose(&induce(m, tau)?, table)?;
    let degs: Vec<i64> = cons.iter().map(|&(i, _)| table.irreducible(i).degree().unwrap()).collect();
    let mut counts = vec![0i64; cons.len()];
    let mut found = None;
    search_extension(table, m, tau, &cons, &degs, 0, deg, &mut counts, &mut found)?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search_extension(
    table: &CharacterTable,
    m: &Embedding,
    tau: &ClassFunction,
    cons: &[(usize, i64)],
    degs: &[i64],
    at: usize,
    left: i64,
    counts: &mut Vec<i64>,
    found: &mut Option<ClassFunction>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    if left == 0 {
        let mult: Vec<(usize, i64)> =
            cons.iter().zip(counts.iter()).filter(|(_, &n)| n > 0).map(|(&(i, _), &n)| (i, n)).collect();
        let psi = chr::recombine(table, &mult);
        if &restrict(m, &psi)? == tau {
            *found = Some(psi);
        }
        return Ok(());
    }
    if at == cons.len() {
        return Ok(());
    }
    let max = cons[at].1.min(left / degs[at]);
    for n in (0..=max).rev() {
        counts[at] = n;
        search_extension(table, m, tau, cons, degs, at + 1, left - n * degs[at], counts, found)?;
    }
    counts[at] = 0;
    Ok(())
}

/// `sigma = Ind_M^H chi` with `M` of index 2 in `H`.
#[derive(Clone)]
pub struct DihedralSetup {
    pub base: AsaiSetup,
    /// `M` inside `G`.
    pub m: Arc<Embedding>,
    /// `M` inside the group of `H`.
    pub m_in_h: Arc<Embedding>,
    /// Character of `M`, on `m.group`.
    pub chi: ClassFunction,
    /// Linear character of `H` with kernel `M`.
    pub epsilon: ClassFunction,
}

impl DihedralSetup {
    pub fn new(base: AsaiSetup, m_in_h: Arc<Embedding>, chi_h: ClassFunction) -> Result<DihedralSetup> {
        if !Arc::ptr_eq(m_in_h.parent(), &base.h.group) || !Arc::ptr_eq(chi_h.group(), &m_in_h.group) {
            return Err(Error::GroupMismatch);
        }
        if m_in_h.sub.index() != 2 || chi_h.degree() != Some(1) {
            return Err(Error::Precondition("need a linear character of an index-2 subgroup of H".into()));
        }
        if induce(&m_in_h, &chi_h)? != base.sigma || !is_irreducible(&base.sigma)? {
            return Err(Error::Precondition("sigma is not the irreducible induction of chi".into()));
        }
        let m = Arc::new(base.h.push_forward(&m_in_h.sub).embed());
        let chi = transport(&chi_h, &m.group, |x| m_in_h.locate(base.h.locate(m.map[x]).unwrap()).unwrap())?;
        let epsilon = ClassFunction::from_element_fn(&base.h.group, |x| {
            CycloNumber::from_int(if m_in_h.sub.contains(x) { 1 } else { -1 }, 1)
        })?;
        Ok(DihedralSetup { base, m, m_in_h, chi, epsilon })
    }

    /// Moves a class function on `M`-inside-`H` to `M`-inside-`G`.
    fn to_m(&self, cf: &ClassFunction) -> Result<ClassFunction> {
        let (m, mh, h) = (&self.m, &self.m_in_h, &self.base.h);
        transport(cf, &m.group, |x| mh.locate(h.locate(m.map[x]).unwrap()).unwrap())
    }

    /// `Res_M(sigma^theta) * chi`.
    pub fn tau(&self) -> Result<ClassFunction> {
        let st = self.base.sigma_theta()?;
        self.to_m(&restrict(&self.m_in_h, &st)?)?.tensor(&self.chi)
    }

    /// Any element of `H` outside `M`.
    pub fn alpha(&self) -> usize {
        let h = &self.base.h;
        (0..h.group.order()).find(|&x| !self.m_in_h.sub.contains(x)).map(|x| h.map[x]).unwrap()
    }
}

/// Enumerates every dihedral realisation of `s.sigma`.
pub fn dihedral_setups(s: &AsaiSetup) -> Result<Vec<DihedralSetup>> {
    let mut out = Vec::new();
    if !is_irreducible(&s.sigma)? {
        return Ok(out);
    }
    for m in grp::index_two_subgroups(&s.h.group) {
        let emb = Arc::new(m.embed());
        for chi in linear_characters(&emb.group)? {
            if induce(&emb, &chi)? == s.sigma {
                out.push(DihedralSetup::new(s.clone(), emb.clone(), chi)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspidalityVerdict {
    pub cuspidal: bool,
    pub m_normal: bool,
    /// When `M` is normal: whether `G/M` is cyclic.
    pub quotient_cyclic: Option<bool>,
    /// Values of an extension of `tau` to `G`, when `M` is not normal and one exists.
    pub extension: Option<Vec<String>>,
    pub asai_irreducible: bool,
    pub agrees: bool,
    pub explanation: String,
}

/// Cuspidal iff `M` is not normal in `G` and `tau` does not extend to `G`.
pub fn cuspidality_dihedral(d: &DihedralSetup) -> Result<CuspidalityVerdict> {
    let m_normal = d.m.sub.is_normal();
    let (extension, explanation) = if m_normal {
        (None, "M is normal in G".to_string())
    } else {
        let tau = d.tau()?;
        match extension_test(&d.base.table, &d.m, &tau)? {
            Some(ext) => (Some(ext.to_strings()), "tau extends to G".to_string()),
            None => (None, "M is not normal and tau does not extend".to_string()),
        }
    };
    let cuspidal = !m_normal && extension.is_none();
    let asai_irreducible = asai_is_irreducible(&d.base)?;
    let quotient_cyclic = if m_normal {
        let q = grp::quotient_by_normal(d.base.group(), &d.m.sub)?;
        Some((0..q.group.order()).any(|x| q.group.element_order(x) == q.group.order()))
    } else {
        None
    };
    Ok(CuspidalityVerdict { cuspidal, m_normal, quotient_cyclic, extension, asai_irreducible, agrees: cuspidal == asai_irreducible, explanation })
}

/// Linear `nu` of `H` with `chi nu = chi`, as indices into the table.
pub fn selftwist_characters(chi: &ClassFunction, table: &CharacterTable) -> Vec<usize> {
    chr::selftwists(chi, table)
}

/// A linear `chi` of the table with `tau' = tau chi`, given equal adjoints.
pub fn ad_mult_one_check(tau: &ClassFunction, tau2: &ClassFunction, table: &CharacterTable) -> Result<Option<usize>> {
    if chr::ad_character(tau)? != chr::ad_character(tau2)? {
        return Err(Error::Precondition("adjoint characters differ".into()));
    }
    for (i, lam) in table.of_degree(1) {
        if &tau.tensor(lam)? == tau2 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// When `M` is not normal and `tau` is reducible: `sigma^theta = Ind mu`, and
/// `chi / chi^alpha = mu / mu^alpha = eps^theta` on `M`.
#[derive(Clone, Debug, Serialize)]
pub struct RatioCheck {
    pub applies: bool,
    pub chi_ratio_ok: bool,
    pub mu_ratio_ok: bool,
}

pub fn dihedral_ratio_check(d: &DihedralSetup) -> Result<RatioCheck> {
    let none = RatioCheck { applies: false, chi_ratio_ok: false, mu_ratio_ok: false };
    if d.m.sub.is_normal() || is_irreducible(&d.tau()?)? {
        return Ok(none);
    }
    let st = d.base.sigma_theta()?;
    let mu = linear_characters(&d.m_in_h.group)?.into_iter().find(|mu| induce(&d.m_in_h, mu).map(|i| i == st).unwrap_or(false));
    let Some(mu) = mu else {
        return Ok(none);
    };
    let mu = d.to_m(&mu)?;
    let alpha = d.alpha();
    let eps_theta = outer_twist(&d.base.h, &d.epsilon, d.base.theta)?;
    let eps_m = d.to_m(&restrict(&d.m_in_h, &eps_theta)?)?;
    let ratio = |x: &ClassFunction| -> Result<ClassFunction> { x.tensor(&outer_twist(&d.m, x, alpha)?.conj()) };
    Ok(RatioCheck { applies: true, chi_ratio_ok: ratio(&d.chi)? == eps_m, mu_ratio_ok: ratio(&mu)? == eps_m })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub pass: bool,
}

fn entry(name: &str, pass: bool) -> IdentityResult {
    IdentityResult { name: name.to_string(), pass }
}

/// Restriction and induction laws for one setup.
pub fn asai_laws(s: &AsaiSetup) -> Result<Vec<IdentityResult>> {
    let as_ = asai_character(s)?;
    let st = s.sigma_theta()?;
    let prod = s.sigma.tensor(&st)?;
    let res = restrict(&s.h, &as_)? == prod;
    let ind = induce(&s.h, &prod)? == as_.add(&as_.tensor(&s.delta)?)?;
    let lam = alt2(&induce(&s.h, &s.sigma)?) == as_.add(&induce(&s.h, &det_character(&s.sigma)?)?)?;
    Ok(vec![entry("restriction", res), entry("induction", ind), entry("exterior-square-split", lam && as_.degree() == Some(4))])
}

/// Identities for a pair of degree-2 characters of one group.
pub fn pair_identities(a: &ClassFunction, b: &ClassFunction) -> Result<Vec<IdentityResult>> {
    let t = a.tensor(b)?;
    let (da, db) = (det_character(a)?, det_character(b)?);
    let sym_tensor = sym2(&t) == sym2(a).tensor(&sym2(b))?.add(&alt2(a).tensor(&alt2(b))?)?;
    let lam_sum = alt2(&a.add(b)?) == t.add(&da)?.add(&db)?;
    let lam_tensor = alt2(&t) == da.tensor(&sym2(b))?.add(&sym2(a).tensor(&db)?)?;
    Ok(vec![
        entry("sym2-of-tensor", sym_tensor),
        entry("exterior-square-of-sum", lam_sum),
        entry("exterior-square-of-tensor", lam_tensor),
    ])
}

/// `sigma = mu1 + mu2`: `As = Ind(mu1 mu2^theta) + t(mu1) delta + t(mu2) delta` with `t` the transfer,
/// and `Lambda^2(Ind sigma) = Ind mu1 Ind mu2 + t(mu1) delta + t(mu2) delta`.
pub fn principal_series_check(s: &AsaiSetup, mu1: &ClassFunction, mu2: &ClassFunction) -> Result<Vec<IdentityResult>> {
    let s2 = s.with_sigma(mu1.add(mu2)?)?;
    let as_ = asai_character(&s2)?;
    let mu2t = outer_twist(&s.h, mu2, s.theta)?;
    let lin = transfer_character(s, mu1)?.tensor(&s.delta)?.add(&transfer_character(s, mu2)?.tensor(&s.delta)?)?;
    let rhs = induce(&s.h, &mu1.tensor(&mu2t)?)?.add(&lin)?;
    let lam = alt2(&induce(&s.h, &s2.sigma)?) == induce(&s.h, mu1)?.tensor(&induce(&s.h, mu2)?)?.add(&lin)?;
    Ok(vec![entry("principal-series", as_ == rhs), entry("principal-series-exterior-square", lam)])
}

/// Local factors at elements of `H`: `det(1 - As(h) T) = det(1 - sigma(h) (x) sigma^theta(h) T)`.
pub fn split_place_check(s: &AsaiSetup) -> Result<bool> {
    let as_ = asai_character(s)?;
    let prod = s.sigma.tensor(&s.sigma_theta()?)?;
    let hc = s.h.group.classes();
    for c in 0..hc.len() {
        let gc = s.h.fusion()[c];
        if chr::charpoly_of_class(&as_, gc)? != chr::charpoly_of_class(&prod, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which of `As`, `As delta` has, at each `g` outside `H`, local factor
/// `(1 - a T)(1 - b T)(1 - a b T^2)` with `a, b` the eigenvalues of `sigma(g^2)`.
#[derive(Clone, Debug, Serialize)]
pub struct InertRule {
    pub asai: bool,
    pub asai_delta: bool,
}

pub fn inert_place_rule(s: &AsaiSetup) -> Result<InertRule> {
    let g = s.group();
    let as_ = asai_character(s)?;
    let asd = as_.tensor(&s.delta)?;
    let gc = g.classes();
    let (mut ok_a, mut ok_d) = (true, true);
    for c in 0..gc.len() {
        let x = gc.representative(c);
        if s.h.sub.contains(x) {
            continue;
        }
        let sq = s.h.locate(g.product(x, x)).unwrap();
        let cp = chr::charpoly_of_class(&s.sigma, s.h.group.classes().class_of(sq))?;
        // (1 - tT + dT^2)(1 - dT^2)
        let d = cp[2].clone();
        let mut want = vec![CycloNumber::zero(1); 5];
        let other = [CycloNumber::one(1), CycloNumber::zero(1), -&d];
        for i in 0..3 {
            for j in 0..3 {
                want[i + j] = &want[i + j] + &(&cp[i] * &other[j]);
            }
        }
        ok_a &= chr::charpoly_of_class(&as_, c)? == want;
        ok_d &= chr::charpoly_of_class(&asd, c)? == want;
    }
    Ok(InertRule { asai: ok_a, asai_delta: ok_d })
}

/// For `sigma = Res sigma0 * mu'`: compares `As` with `(det sigma0 + sym^2 sigma0 delta) t(mu')`
/// and with the placement `(det sigma0 delta + sym^2 sigma0 delta) t(mu')`.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaPlacement {
    pub computed: bool,
    pub alternative: bool,
}

pub fn delta_placement(s: &AsaiSetup, sigma0: &ClassFunction, mu: &ClassFunction) -> Result<DeltaPlacement> {
    let sig = restrict(&s.h, sigma0)?.tensor(mu)?;
    let as_ = asai_character(&s.with_sigma(sig)?)?;
    let t = transfer_character(s, mu)?;
    let det0 = det_character(sigma0)?;
    let sd = sym2(sigma0).tensor(&s.delta)?;
    let computed = det0.add(&sd)?.tensor(&t)? == as_;
    let alternative = det0.tensor(&s.delta)?.add(&sd)?.tensor(&t)? == as_;
    Ok(DeltaPlacement { computed, alternative })
}

/// `As(sigma chi) = As(sigma) t(chi)`.
pub fn twist_law(s: &AsaiSetup, chi: &ClassFunction) -> Result<bool> {
    let lhs = asai_character(&s.with_sigma(s.sigma.tensor(chi)?)?)?;
    Ok(lhs == asai_character(s)?.tensor(&transfer_character(s, chi)?)?)
}

/// Twist and self-twist bookkeeping for each factorisation `Res_H rho = sigma (x) sigma'`.
#[derive(Clone, Debug, Serialize)]
pub struct TensorFactorReport {
    pub factorizations: usize,
    pub twist_related: bool,
    pub both_dihedral: bool,
    pub case_one: bool,
    pub case_two: bool,
}

pub fn tensor_factor_report(h: &Embedding, h_table: &CharacterTable, rho: &ClassFunction, theta: usize) -> Result<TensorFactorReport> {
    let res = restrict(h, rho)?;
    let two: Vec<&ClassFunction> = h_table.of_degree(2).into_iter().map(|(_, c)| c).collect();
    let lin = h_table.linear_characters();
    let mut rep = TensorFactorReport { factorizations: 0, twist_related: false, both_dihedral: false, case_one: false, case_two: false };
    for (i, a) in two.iter().enumerate() {
        for b in &two[i..] {
            if a.tensor(b)? != res {
                continue;
            }
            rep.factorizations += 1;
            let at = outer_twist(h, a, theta)?;
            let bt = outer_twist(h, b, theta)?;
            for l in &lin {
                if &a.tensor(l)? == *b {
                    rep.twist_related = true;
                }
                let linv = l.conj();
                if at == a.tensor(l)? && bt == b.tensor(&linv)? {
                    rep.case_one = true;
                }
                if at == b.tensor(l)? && bt == a.tensor(&linv)? {
                    rep.case_two = true;
                }
            }
            if chr::selftwists(a, h_table).len() > 1 && chr::selftwists(b, h_table).len() > 1 {
                rep.both_dihedral = true;
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub enum Go4Case {
    TensorOverF { tau: Vec<String>, tau_prime: Vec<String> },
    InducedQuadratic { subgroup_order: usize, subgroup_members_head: Vec<usize>, eta: Vec<String> },
    AsaiTwist { k_members_head: Vec<usize>, sigma: Vec<String>, beta: Vec<String>, delta_twist_needed: bool },
}

impl Go4Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Go4Case::TensorOverF { .. } => "TensorOverF",
            Go4Case::InducedQuadratic { .. } => "InducedQuadratic",
            Go4Case::AsaiTwist { .. } => "AsaiTwist",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Go4Classification {
    pub group_order: usize,
    pub on_cover: bool,
    pub similitude_nontrivial: bool,
    pub cases: Vec<Go4Case>,
}

impl Go4Classification {
    pub fn tags(&self) -> Vec<&'static str> {
        let mut t: Vec<&'static str> = self.cases.iter().map(Go4Case::tag).collect();
        t.dedup();
        t
    }
}

fn head(s: &Subgroup) -> Vec<usize> {
    s.members().iter().copied().take(8).collect()
}

/// Searches the three cases for an irreducible degree-4 character of GO type.
/// `k` restricts the Asai search to one index-2 subgroup.
pub fn classify_go4(table: &Arc<CharacterTable>, rho: &ClassFunction, k: Option<&Subgroup>) -> Result<Go4Classification> {
    let g = table.group().clone();
    if !Arc::ptr_eq(rho.group(), &g) {
        return Err(Error::GroupMismatch);
    }
    if rho.degree() != Some(4) || !is_irreducible(rho)? {
        return Err(Error::Precondition("rho must be irreducible of degree 4".into()));
    }
    if !grp::is_solvable(&g) {
        return Err(Error::Precondition("group is not solvable".into()));
    }
    let (_, lam) = crate::ogo::is_go_type(rho)?.ok_or_else(|| Error::Precondition("rho is not of GO type".into()))?;
    let nu = det_character(rho)?.tensor(&lam.tensor(&lam)?.conj())?;
    let similitude_nontrivial = nu != ClassFunction::trivial(&g);
    let mut cases = Vec::new();
    let two: Vec<&ClassFunction> = table.of_degree(2).into_iter().map(|(_, c)| c).collect();
    for (i, a) in two.iter().enumerate() {
        for b in &two[i..] {
            if &a.tensor(b)? == rho {
                cases.push(Go4Case::TensorOverF { tau: a.to_strings(), tau_prime: b.to_strings() });
            }
        }
    }
    let index_two = grp::index_two_subgroups(&g);
    for l in &index_two {
        let emb = l.embed();
        let lt = character_table(&emb.group)?;
        for (_, eta) in lt.of_degree(2) {
            if &induce(&emb, eta)? == rho {
                cases.push(Go4Case::InducedQuadratic { subgroup_order: l.order(), subgroup_members_head: head(l), eta: eta.to_strings() });
            }
        }
    }
    let lin = linear_characters(&g)?;
    let ks: Vec<Subgroup> = match k {
        Some(k) => vec![k.clone()],
        None => index_two,
    };
    for kk in &ks {
        let emb = Arc::new(kk.embed());
        let kt = character_table(&emb.group)?;
        let res = restrict(&emb, rho)?;
        for (_, sigma) in kt.of_degree(2) {
            let s = AsaiSetup::new(table.clone(), emb.clone(), sigma.clone())?;
            let st = s.sigma_theta()?;
            // cheap filter: Res rho must be a linear twist of sigma sigma^theta
            let prod = sigma.tensor(&st)?;
            if prod.degree() != res.degree() || inner_product_int(&prod, &prod)? != inner_product_int(&res, &res)? {
                continue;
            }
            let as_ = asai_character(&s)?;
            for beta in &lin {
                if &as_.tensor(beta)? == rho {
                    let delta_twist_needed = beta.tensor(&s.delta).map(|bd| lin.contains(&bd)).unwrap_or(false)
                        && beta != &ClassFunction::trivial(&g);
                    cases.push(Go4Case::AsaiTwist {
                        k_members_head: head(kk),
                        sigma: sigma.to_strings(),
                        beta: beta.to_strings(),
                        delta_twist_needed,
                    });
                }
            }
        }
    }
    Ok(Go4Classification { group_order: g.order(), on_cover: false, similitude_nontrivial, cases })
}

/// Classifies on `G`; if no case is found, pulls `rho` back along `projection`
/// from the cover and classifies there.
pub fn classify_go4_with_cover(
    table: &Arc<CharacterTable>,
    rho: &ClassFunction,
    cover: Option<(&Arc<CharacterTable>, &[usize])>,
) -> Result<Go4Classification> {
    let direct = classify_go4(table, rho, None)?;
    if !direct.cases.is_empty() {
        return Ok(direct);
    }
    let Some((ct, proj)) = cover else {
        return Ok(direct);
    };
    let pulled = chr::inflate(rho, ct.group(), proj)?;
    let mut c = classify_go4(ct, &pulled, None)?;
    c.on_cover = true;
    Ok(c)
}

/// Outcome of an exhaustive sweep: how many cases ran and which failed.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepStats {
    pub groups: usize,
    pub cases: usize,
    pub positives: usize,
    pub failures: Vec<String>,
}

impl SweepStats {
    fn merge(mut self, other: SweepStats) -> SweepStats {
        self.groups += other.groups;
        self.cases += other.cases;
        self.positives += other.positives;
        self.failures.extend(other.failures);
        self
    }
}

/// Every `(G, H, sigma)` with `H` of index 2 and `sigma` any degree-2 character of `H`.
pub fn setups_of(g: &Group) -> Result<Vec<AsaiSetup>> {
    let table = Arc::new(character_table(g)?);
    let mut out = Vec::new();
    for h in grp::index_two_subgroups(g) {
        let emb = Arc::new(h.embed());
        let ht = character_table(&emb.group)?;
        for sigma in degree_two_characters(&ht) {
            out.push(AsaiSetup::new(table.clone(), emb.clone(), sigma)?);
        }
    }
    Ok(out)
}

fn sweep<F>(groups: &[Group], per_group: F) -> SweepStats
where
    F: Fn(&Group) -> Result<SweepStats> + Sync,
{
    use rayon::prelude::*;
    let parts: Vec<SweepStats> = groups
        .par_iter()
        .map(|g| {
            per_group(g).unwrap_or_else(|e| SweepStats { groups: 1, cases: 1, positives: 0, failures: vec![format!("{}: {e}", g.label())] })
        })
        .collect();
    parts.into_iter().fold(SweepStats::default(), SweepStats::merge)
}

/// Restriction, induction, split-place and principal-series laws over all setups.
pub fn law_sweep(groups: &[Group]) -> SweepStats {
    sweep(groups, |g| {
        let mut st = SweepStats { groups: 1, ..Default::default() };
        for (i, s) in setups_of(g)?.iter().enumerate() {
            st.cases += 1;
            let mut res = asai_laws(s)?;
            res.push(entry("split-place", split_place_check(s)?));
            if !is_irreducible(&s.sigma)? {
                let lin = linear_characters(&s.h.group)?;
                let mu1 = lin.iter().find(|l| inner_product_int(&s.sigma, l).unwrap_or(0) >= 1).unwrap();
                let mu2 = s.sigma.sub(mu1)?;
                res.extend(principal_series_check(s, mu1, &mu2)?);
            }
            for r in res.iter().filter(|r| !r.pass) {
                st.failures.push(format!("{} setup {i}: {}", g.label(), r.name));
            }
        }
        Ok(st)
    })
}

/// Split-place rule on every setup and the principal-series formulas on every reducible `sigma`.
pub fn local_formula_sweep(groups: &[Group]) -> SweepStats {
    sweep(groups, |g| {
        let mut st = SweepStats { groups: 1, ..Default::default() };
        for (i, s) in setups_of(g)?.iter().enumerate() {
            st.cases += 1;
            let mut res = vec![entry("split-place", split_place_check(s)?)];
            if !is_irreducible(&s.sigma)? {
                st.positives += 1;
                let lin = linear_characters(&s.h.group)?;
                let mu1 = lin.iter().find(|l| inner_product_int(&s.sigma, l).unwrap_or(0) >= 1).unwrap();
                let mu2 = s.sigma.sub(mu1)?;
                res.extend(principal_series_check(s, mu1, &mu2)?);
            }
            for r in res.iter().filter(|r| !r.pass) {
                st.failures.push(format!("{} setup {i}: {}", g.label(), r.name));
            }
        }
        Ok(st)
    })
}

/// [`pair_identities`] on `count` random pairs of degree-2 characters, each pair
/// drawn from one group chosen uniformly among `groups`.
pub fn identity_suite(groups: &[Group], count: usize, seed: u64) -> Result<SweepStats> {
    use rand::{Rng, SeedableRng};
    let pools: Vec<Vec<ClassFunction>> = groups
        .iter()
        .map(|g| Ok(degree_two_characters(&character_table(g)?)))
        .collect::<Result<_>>()?;
    let usable: Vec<usize> = (0..groups.len()).filter(|&i| !pools[i].is_empty()).collect();
    if usable.is_empty() {
        return Err(Error::Input("no group has a degree-2 character".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut st = SweepStats { groups: usable.len(), ..Default::default() };
    for n in 0..count {
        let gi = usable[rng.gen_range(0..usable.len())];
        let pool = &pools[gi];
        let (a, b) = (&pool[rng.gen_range(0..pool.len())], &pool[rng.gen_range(0..pool.len())]);
        st.cases += 1;
        for r in pair_identities(a, b)?.into_iter().filter(|r| !r.pass) {
            st.failures.push(format!("pair {n} in {}: {}", groups[gi].label(), r.name));
        }
    }
    Ok(st)
}

/// Dihedral criterion against irreducibility of the Asai character, over all dihedral setups.
pub fn cuspidality_sweep(groups: &[Group]) -> SweepStats {
    sweep(groups, |g| {
        let mut st = SweepStats { groups: 1, ..Default::default() };
        for s in setups_of(g)? {
            for d in dihedral_setups(&s)? {
                st.cases += 1;
                let v = cuspidality_dihedral(&d)?;
                if v.cuspidal {
                    st.positives += 1;
                }
                if !v.agrees {
                    let cyc = if v.quotient_cyclic == Some(true) { " (G/M cyclic)" } else { "" };
                    st.failures.push(format!("{}: {}{cyc}, Asai irreducible={}", g.label(), v.explanation, v.asai_irreducible));
                }
                let r = dihedral_ratio_check(&d)?;
                if r.applies && !(r.chi_ratio_ok && r.mu_ratio_ok) {
                    st.failures.push(format!("{}: ratio identity fails", g.label()));
                }
            }
        }
        Ok(st)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::named_group;

    fn setup(g: &str, sigma_deg2_index: usize) -> AsaiSetup {
        let g = named_group(g).unwrap();
        let t = Arc::new(character_table(&g).unwrap());
        let h = Arc::new(grp::index_two_subgroups(&g)[0].embed());
        let ht = character_table(&h.group).unwrap();
        let sig = degree_two_characters(&ht)[sigma_deg2_index].clone();
        AsaiSetup::new(t, h, sig).unwrap()
    }

    #[test]
    fn laws_on_s4() {
        // H = A4, sigma = sum of two linear characters
        for i in 0..6 {
            let s = setup("S4", i);
            assert_eq!(asai_character(&s).unwrap().degree(), Some(4));
            assert!(asai_laws(&s).unwrap().iter().all(|r| r.pass));
            assert!(split_place_check(&s).unwrap());
        }
    }

    #[test]
    fn extension_examples() {
        let s3 = named_group("S3").unwrap();
        let t = character_table(&s3).unwrap();
        let a3 = grp::index_two_subgroups(&s3)[0].embed();
        let at = character_table(&a3.group).unwrap();
        let omega = at.irreducible(1);
        assert!(extension_test(&t, &a3, omega).unwrap().is_none());
        assert!(extension_test(&t, &a3, at.irreducible(0)).unwrap().is_some());
        let z4 = named_group("Z/4").unwrap();
        let t = character_table(&z4).unwrap();
        let z2 = grp::index_two_subgroups(&z4)[0].embed();
        let zt = character_table(&z2.group).unwrap();
        let e = extension_test(&t, &z2, zt.irreducible(1)).unwrap().unwrap();
        assert_eq!(e.to_strings().len(), 4);
        assert!(chr::is_irreducible(&e).unwrap());
    }

    #[test]
    fn transfer_on_z4() {
        let z4 = named_group("Z/4").unwrap();
        let t = Arc::new(character_table(&z4).unwrap());
        let z2 = Arc::new(grp::index_two_subgroups(&z4)[0].embed());
        let zt = character_table(&z2.group).unwrap();
        let s = AsaiSetup::new(t, z2, zt.irreducible(0).add(zt.irreducible(1)).unwrap()).unwrap();
        let tr = transfer_character(&s, zt.irreducible(1)).unwrap();
        let sq = tr.tensor(&tr).unwrap();
        assert_ne!(tr, ClassFunction::trivial(&z4));
        assert_eq!(sq, ClassFunction::trivial(&z4));
        assert_eq!(transfer_character(&s, zt.irreducible(0)).unwrap(), ClassFunction::trivial(&z4));
    }

    #[test]
    fn gl23_adjoint_twins() {
        let g = named_group("GL(2,3)").unwrap();
        let t = character_table(&g).unwrap();
        let faithful: Vec<&ClassFunction> =
            t.of_degree(2).into_iter().map(|(_, c)| c).filter(|c| chr::is_faithful(c)).collect();
        assert_eq!(faithful.len(), 2);
        let i = ad_mult_one_check(faithful[0], faithful[1], &t).unwrap().unwrap();
        let sign = t.irreducible(i);
        assert!(sign.is_rational());
        assert_ne!(i, 0);
    }
}
