//! Finite groups given by generators, with a canonical breadth-first element order.
//!
//! Element 0 is always the identity. Elements are numbered in the order a
//! breadth-first search from the identity discovers them, right-multiplying by
//! the generators in the order given. Permutations compose left to right:
//! `(a*b)(x) = b(a(x))`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest group the closure will build.
pub const ORDER_CAP: usize = 50_000;
/// Largest group for which a dense multiplication table is stored.
pub const TABLE_CAP: usize = 5_000;
/// Largest accepted permutation degree for user input.
pub const DEGREE_CAP: usize = 64;

pub type Group = Arc<FiniteGroup>;

pub struct FiniteGroup {
    label: String,
    order: usize,
    ngens: usize,
    generators: Vec<usize>,
    /// `right[x * ngens + k]` is `x * gen_k`.
    right: Vec<u32>,
    parent: Vec<u32>,
    via: Vec<u16>,
    table: Option<Vec<u16>>,
    inverse: Vec<u32>,
    perms: Option<(usize, Vec<Vec<u16>>)>,
    classes: OnceLock<ConjugacyData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

/// Breadth-first closure of `gens` under `mul`.
pub fn closure<T, M, I>(
    label: &str,
    identity: T,
    gens: &[T],
    mul: M,
    inv: I,
    cap: usize,
) -> Result<(FiniteGroup, Vec<T>)>
where
    T: Clone + Eq + Hash,
    M: Fn(&T, &T) -> T,
    I: Fn(&T) -> T,
{
    let ngens = gens.len();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<T, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut right: Vec<u32> = Vec::new();
    let mut parent = vec![0u32];
    let mut via = vec![0u16];
    let mut x = 0;
    while x < elems.len() {
        for (k, g) in gens.iter().enumerate() {
            let y = mul(&elems[x], g);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    if elems.len() >= cap {
                        return Err(Error::ResourceCap(format!(
                            "group `{label}` exceeds order cap {cap}"
                        )));
                    }
                    let i = elems.len() as u32;
                    index.insert(y.clone(), i);
                    elems.push(y);
                    parent.push(x as u32);
                    via.push(k as u16);
                    i
                }
            };
            right.push(idx);
        }
        x += 1;
    }
    let order = elems.len();
    let inverse = elems.iter().map(|e| index[&inv(e)]).collect();
    let generators = gens.iter().map(|g| index[g] as usize).collect();
    let mut g = FiniteGroup {
        label: label.to_string(),
        order,
        ngens,
        generators,
        right,
        parent,
        via,
        table: None,
        inverse,
        perms: None,
        classes: OnceLock::new(),
    };
    g.build_table();
    Ok((g, elems))
}

impl FiniteGroup {
    fn build_table(&mut self) {
        let n = self.order;
        if n > TABLE_CAP {
            return;
        }
        let mut t = vec![0u16; n * n];
        for i in 0..n {
            let row = &mut t[i * n..(i + 1) * n];
            row[0] = i as u16;
            for j in 1..n {
                let p = row[self.parent[j] as usize] as usize;
                row[j] = self.right[p * self.ngens + self.via[j] as usize] as u16;
            }
        }
        self.table = Some(t);
    }

    /// Group generated by permutations of `degree` points (0-based images).
    pub fn from_permutations(label: &str, degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        for g in gens {
            if g.len() != degree {
                return Err(Error::Input("generator length differs from degree".into()));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::Input("generator is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let gens16: Vec<Vec<u16>> =
            gens.iter().map(|g| g.iter().map(|&x| x as u16).collect()).collect();
        let id: Vec<u16> = (0..degree as u16).collect();
        let (mut g, elems) = closure(
            label,
            id,
            &gens16,
            |a: &Vec<u16>, b: &Vec<u16>| a.iter().map(|&x| b[x as usize]).collect(),
            |a: &Vec<u16>| {
                let mut r = vec![0u16; a.len()];
                for (i, &x) in a.iter().enumerate() {
                    r[x as usize] = i as u16;
                }
                r
            },
            ORDER_CAP,
        )?;
        g.perms = Some((degree, elems));
        Ok(g)
    }

    /// Parses the group file format: a `degree: n` line followed by `gen:` lines in
    /// cycle notation with 1-based points; `#` starts a comment.
    pub fn parse(label: &str, text: &str) -> Result<FiniteGroup> {
        let mut degree = None;
        let mut gens = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("degree:") {
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad degree line `{line}`")))?;
                if d == 0 || d > DEGREE_CAP {
                    return Err(Error::Input(format!("degree {d} outside 1..={DEGREE_CAP}")));
                }
                degree = Some(d);
            } else if let Some(rest) = line.strip_prefix("gen:") {
                let d = degree.ok_or_else(|| Error::Parse("gen before degree".into()))?;
                gens.push(parse_cycles(rest, d)?);
            } else {
                return Err(Error::Parse(format!("unrecognised line `{line}`")));
            }
        }
        let d = degree.ok_or_else(|| Error::Parse("missing degree line".into()))?;
        FiniteGroup::from_permutations(label, d, &gens)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> FiniteGroup {
        self.label = label.to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.table {
            return t[a * self.order + b] as usize;
        }
        let mut word = Vec::new();
        let mut j = b;
        while j != 0 {
            word.push(self.via[j] as usize);
            j = self.parent[j] as usize;
        }
        let mut x = a;
        for &k in word.iter().rev() {
            x = self.right[x * self.ngens + k] as usize;
        }
        x
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        // g^-1 x g
        self.product(self.product(self.inverse(g), x), g)
    }

    pub fn power(&self, a: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inverse(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.product(acc, base);
            }
            base = self.product(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.product(x, a);
            k += 1;
        }
        k
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.product(a, b);
        let ba = self.product(b, a);
        self.product(self.inverse(ba), ab)
    }

    pub fn permutation(&self, a: usize) -> Option<&[u16]> {
        self.perms.as_ref().map(|(_, p)| p[a].as_slice())
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|(d, _)| *d)
    }

    /// Cycle notation for permutation groups, `g<i>` otherwise.
    pub fn element_name(&self, a: usize) -> String {
        match self.permutation(a) {
            Some(p) => cycle_notation(p),
            None => format!("g{a}"),
        }
    }

    pub fn classes(&self) -> &ConjugacyData {
        self.classes.get_or_init(|| ConjugacyData::compute(self))
    }

    pub fn exponent(&self) -> usize {
        self.classes().rep_orders.iter().fold(1, |a, &b| a.lcm(&b))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.product(a, b) == self.product(b, a)))
    }

    pub fn center(self: &Arc<Self>) -> Subgroup {
        let members = (0..self.order)
            .filter(|&z| self.generators.iter().all(|&g| self.product(z, g) == self.product(g, z)))
            .collect();
        Subgroup::from_sorted(self.clone(), members)
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), (0..self.order).collect())
    }

    pub fn trivial(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), vec![0])
    }
}

pub fn cycle_notation(p: &[u16]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] as usize == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = p[s] as usize;
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x] as usize;
        }
        let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&parts.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Parses `(1 2 3)(4 5)` into 0-based images on `degree` points.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = s.trim();
    let mut seen = vec![false; degree];
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` in `{s}`")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in `{s}`")))?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point `{t}`"))))
            .collect::<Result<_>>()?;
        for &p in &pts {
            if p == 0 || p > degree {
                return Err(Error::Input(format!("point {p} outside 1..={degree}")));
            }
            if seen[p - 1] {
                return Err(Error::Input(format!("point {p} repeated in `{s}`")));
            }
            seen[p - 1] = true;
        }
        for w in 0..pts.len() {
            perm[pts[w] - 1] = pts[(w + 1) % pts.len()] - 1;
        }
    }
    Ok(perm)
}

/// Conjugacy classes sorted by (representative order, class size, least member).
#[derive(Debug, Clone)]
pub struct ConjugacyData {
    class_of: Vec<u32>,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    rep_orders: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjugacyData {
    fn compute(g: &FiniteGroup) -> ConjugacyData {
        let n = g.order;
        let mut raw = vec![u32::MAX; n];
        let mut found: Vec<(usize, usize, usize)> = Vec::new();
        let mut stack = Vec::new();
        for x in 0..n {
            if raw[x] != u32::MAX {
                continue;
            }
            let id = found.len() as u32;
            raw[x] = id;
            stack.push(x);
            let mut size = 0;
            while let Some(y) = stack.pop() {
                size += 1;
                for &s in &g.generators {
                    let z = g.conjugate(y, s);
                    if raw[z] == u32::MAX {
                        raw[z] = id;
                        stack.push(z);
                    }
                }
            }
            found.push((g.element_order(x), size, x));
        }
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by_key(|&i| found[i]);
        let mut rename = vec![0u32; found.len()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new as u32;
        }
        let class_of: Vec<u32> = raw.iter().map(|&c| rename[c as usize]).collect();
        let representatives: Vec<usize> = order.iter().map(|&i| found[i].2).collect();
        let inverse_class =
            representatives.iter().map(|&r| class_of[g.inverse(r)] as usize).collect();
        ConjugacyData {
            class_of,
            sizes: order.iter().map(|&i| found[i].1).collect(),
            rep_orders: order.iter().map(|&i| found[i].0).collect(),
            representatives,
            inverse_class,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn rep_order(&self, c: usize) -> usize {
        self.rep_orders[c]
    }

    pub fn rep_orders(&self) -> &[usize] {
        &self.rep_orders
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// Class of `g^k` for `g` in class `c`; independent of the chosen `g`.
    pub fn power_class(&self, g: &FiniteGroup, c: usize, k: i64) -> usize {
        let o = self.rep_orders[c] as i64;
        self.class_of(g.power(self.representatives[c], k.rem_euclid(o)))
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] as usize == c).collect()
    }
}

/// A subgroup, stored as the sorted list of its members in the parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Vec<usize>,
    mask: Arc<Vec<bool>>,
    is_normal: bool,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} in {})", self.members.len(), self.parent.label)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_sorted(parent: Group, members: Vec<usize>) -> Subgroup {
        let mut mask = vec![false; parent.order];
        for &m in &members {
            mask[m] = true;
        }
        let is_normal = members.iter().all(|&m| {
            parent.generators.iter().all(|&g| mask[parent.conjugate(m, g)])
        });
        Subgroup { parent, members, mask: Arc::new(mask), is_normal }
    }

    /// Subgroup generated by the given elements.
    pub fn generated(parent: &Group, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; parent.order];
        mask[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = parent.product(x, g);
                if !mask[y] {
                    mask[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Subgroup::from_sorted(parent.clone(), list)
    }

    /// Validates that `members` is closed and builds the subgroup.
    pub fn from_members(parent: &Group, members: &[usize]) -> Result<Subgroup> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.is_empty() || m[0] != 0 {
            return Err(Error::Input("subgroup must contain the identity".into()));
        }
        let sub = Subgroup::from_sorted(parent.clone(), m);
        for &a in &sub.members {
            if !sub.contains(parent.inverse(a)) {
                return Err(Error::Input("member set not closed under inverses".into()));
            }
            for &b in &sub.members {
                if !sub.contains(parent.product(a, b)) {
                    return Err(Error::Input("member set not closed under products".into()));
                }
            }
        }
        Ok(sub)
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.members.len()
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    /// A small generating set, chosen greedily in member order.
    pub fn small_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = Subgroup::generated(&self.parent, &[]);
        for &m in &self.members {
            if cur.order() == self.order() {
                break;
            }
            if !cur.contains(m) {
                gens.push(m);
                cur = Subgroup::generated(&self.parent, &gens);
            }
        }
        gens
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let m = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_sorted(self.parent.clone(), m)
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.small_generators();
        gens.extend(other.small_generators());
        Subgroup::generated(&self.parent, &gens)
    }

    /// Normal closure inside `within` (a subgroup containing this one).
    pub fn normal_closure_in(&self, within: &Subgroup) -> Subgroup {
        let wg = within.small_generators();
        let mut gens = self.small_generators();
        let mut cur = Subgroup::generated(&self.parent, &gens);
        loop {
            let mut grew = false;
            for &g in &wg {
                for &x in &gens.clone() {
                    let y = self.parent.conjugate(x, g);
                    if !cur.contains(y) {
                        gens.push(y);
                        cur = Subgroup::generated(&self.parent, &gens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return cur;
            }
        }
    }

    /// Whether this subgroup is normal in `within`.
    pub fn is_normal_in(&self, within: &Subgroup) -> bool {
        within
            .small_generators()
            .iter()
            .all(|&g| self.members.iter().all(|&m| self.contains(self.parent.conjugate(m, g))))
    }

    /// Commutator subgroup of this subgroup.
    pub fn derived(&self) -> Subgroup {
        let gens = self.small_generators();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                comms.push(self.parent.commutator(a, b));
            }
        }
        Subgroup::generated(&self.parent, &comms).normal_closure_in(self)
    }

    /// Builds the subgroup as a stand-alone group with an embedding.
    pub fn embed(&self) -> Embedding {
        Embedding::new(self.clone())
    }
}

/// A subgroup realised as its own group.
pub struct Embedding {
    pub sub: Subgroup,
    pub group: Group,
    /// Image in the parent of each element of `group`.
    pub map: Vec<usize>,
    locate: HashMap<usize, usize>,
    fusion: OnceLock<Vec<usize>>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?})", self.sub)
    }
}

impl Embedding {
    fn new(sub: Subgroup) -> Embedding {
        let parent = sub.parent.clone();
        let gens = sub.small_generators();
        let label = format!("{}<{}>", parent.label, sub.order());
        let (g, elems) = closure(
            &label,
            0usize,
            &gens,
            |a: &usize, b: &usize| parent.product(*a, *b),
            |a: &usize| parent.inverse(*a),
            ORDER_CAP,
        )
        .expect("subgroup closure within cap");
        let locate = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Embedding { sub, group: Arc::new(g), map: elems, locate, fusion: OnceLock::new() }
    }

    pub fn parent(&self) -> &Group {
        &self.sub.parent
    }

    /// Index in `group` of a parent element lying in the subgroup.
    pub fn locate(&self, x: usize) -> Option<usize> {
        self.locate.get(&x).copied()
    }

    /// Parent class containing each class of the subgroup.
    pub fn fusion(&self) -> &[usize] {
        self.fusion.get_or_init(|| {
            let pc = self.sub.parent.classes();
            self.group
                .classes()
                .representatives()
                .iter()
                .map(|&r| pc.class_of(self.map[r]))
                .collect()
        })
    }

    /// Subgroup of `group` corresponding to a parent subgroup contained in this one.
    pub fn pull_back(&self, inner: &Subgroup) -> Result<Subgroup> {
        let members: Option<Vec<usize>> = inner.members.iter().map(|&m| self.locate(m)).collect();
        let members = members.ok_or_else(|| Error::Input("subgroup not contained".into()))?;
        Subgroup::from_members(&self.group, &members)
    }

    /// Parent subgroup corresponding to a subgroup of `group`.
    pub fn push_forward(&self, inner: &Subgroup) -> Subgroup {
        let mut members: Vec<usize> = inner.members.iter().map(|&m| self.map[m]).collect();
        members.sort_unstable();
        Subgroup::from_sorted(self.sub.parent.clone(), members)
    }
}

/// Derived series, starting with the whole group and ending at a perfect term.
pub fn derived_series(g: &Group) -> Vec<Subgroup> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().unwrap();
        let d = last.derived();
        if d.order() == last.order() {
            return series;
        }
        series.push(d);
    }
}

pub fn is_solvable(g: &Group) -> bool {
    derived_series(g).last().unwrap().order() == 1
}

/// All subgroups of index `k` (at most 8), via transitive actions on `k` points.
pub fn subgroups_of_index(g: &Group, k: usize) -> Result<Vec<Subgroup>> {
    if k == 0 || k > 8 {
        return Err(Error::Input(format!("index {k} outside 1..=8")));
    }
    if !g.order.is_multiple_of(k) {
        return Ok(Vec::new());
    }
    if k == 1 {
        return Ok(vec![g.whole()]);
    }
    let n = g.order;
    let s = g.ngens;
    let edges = n * s;
    let mut point = vec![u8::MAX; n];
    let mut perm = vec![u8::MAX; s * k];
    let mut used = vec![false; s * k];
    point[0] = 0;
    let mut npoints = 1usize;

    enum Undo {
        Point(usize),
        Perm(usize, usize, usize),
    }
    struct Frame {
        edge: usize,
        trail: usize,
        npoints: usize,
        next: usize,
    }
    let mut trail: Vec<Undo> = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut e = 0usize;

    'search: loop {
        // propagate forced edges
        let mut conflict = false;
        let mut branch = false;
        while e < edges {
            let x = e / s;
            let i = e % s;
            let p = point[x] as usize;
            let y = g.right[e] as usize;
            let q = perm[i * k + p];
            if q != u8::MAX {
                if point[y] == u8::MAX {
                    point[y] = q;
                    trail.push(Undo::Point(y));
                } else if point[y] != q {
                    conflict = true;
                    break;
                }
            } else if point[y] != u8::MAX {
                let q = point[y] as usize;
                if used[i * k + q] {
                    conflict = true;
                    break;
                }
                perm[i * k + p] = q as u8;
                used[i * k + q] = true;
                trail.push(Undo::Perm(i, p, q));
            } else {
                branch = true;
                break;
            }
            e += 1;
        }
        if !conflict && !branch && npoints == k {
            found.push((0..n).filter(|&x| point[x] == 0).collect());
        }
        if branch {
            stack.push(Frame { edge: e, trail: trail.len(), npoints, next: 0 });
        }
        // choose the next candidate, backtracking as needed
        loop {
            let Some(fr) = stack.last_mut() else {
                break 'search;
            };
            while trail.len() > fr.trail {
                match trail.pop().unwrap() {
                    Undo::Point(y) => point[y] = u8::MAX,
                    Undo::Perm(i, p, q) => {
                        perm[i * k + p] = u8::MAX;
                        used[i * k + q] = false;
                    }
                }
            }
            npoints = fr.npoints;
            let x = fr.edge / s;
            let i = fr.edge % s;
            let p = point[x] as usize;
            let y = g.right[fr.edge] as usize;
            let limit = (npoints + 1).min(k);
            let mut cand = fr.next;
            while cand < limit && used[i * k + cand] {
                cand += 1;
            }
            if cand >= limit {
                stack.pop();
                continue;
            }
            fr.next = cand + 1;
            if cand == npoints {
                npoints += 1;
            }
            perm[i * k + p] = cand as u8;
            used[i * k + cand] = true;
            trail.push(Undo::Perm(i, p, cand));
            point[y] = cand as u8;
            trail.push(Undo::Point(y));
            e = fr.edge + 1;
            continue 'search;
        }
    }
    let mut subs: Vec<Subgroup> =
        found.into_iter().map(|m| Subgroup::from_sorted(g.clone(), m)).collect();
    subs.sort_by(|a, b| a.members.cmp(&b.members));
    subs.dedup();
    Ok(subs)
}

/// Index-2 subgroups from the elementary abelian quotient by the squares.
pub fn index_two_subgroups(g: &Group) -> Vec<Subgroup> {
    let squares: Vec<usize> = (0..g.order).map(|x| g.product(x, x)).collect();
    let s = Subgroup::generated(g, &squares);
    let q = quotient_by_normal(g, &s).expect("squares generate a normal subgroup");
    let qg = &q.group;
    // coordinates over a greedy basis of the quotient
    let basis = qg.whole().small_generators();
    let r = basis.len();
    let mut coord = vec![u64::MAX; qg.order()];
    coord[0] = 0;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (bi, &b) in basis.iter().enumerate() {
            let y = qg.product(x, b);
            if coord[y] == u64::MAX {
                coord[y] = coord[x] ^ (1 << bi);
                frontier.push(y);
            }
        }
    }
    let mut out = Vec::new();
    for f in 1u64..(1u64 << r) {
        let members: Vec<usize> = (0..g.order)
            .filter(|&x| (coord[q.projection[x]] & f).count_ones() % 2 == 0)
            .collect();
        out.push(Subgroup::from_sorted(g.clone(), members));
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_pi_number(mut n: usize, primes: &[usize]) -> bool {
    for &p in primes {
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n == 1
}

/// A Hall subgroup for a set of primes, in a solvable group.
pub fn hall_subgroup(g: &Group, primes: &[usize]) -> Result<Subgroup> {
    if !is_solvable(g) {
        return Err(Error::Precondition("group is not solvable".into()));
    }
    let mut target = 1;
    let mut n = g.order;
    for &p in primes {
        while n.is_multiple_of(p) {
            n /= p;
            target *= p;
        }
    }
    let pi_elems: Vec<usize> =
        (1..g.order).filter(|&x| is_pi_number(g.element_order(x), primes)).collect();
    // Depth-first growth; in a solvable group every maximal pi-subgroup is Hall,
    // so the first branch normally succeeds.
    fn grow(g: &Group, cur: Subgroup, cands: &[usize], target: usize, primes: &[usize], budget: &mut usize) -> Option<Subgroup> {
        if cur.order() == target {
            return Some(cur);
        }
        for &x in cands {
            if cur.contains(x) {
                continue;
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let mut gens = cur.small_generators();
            gens.push(x);
            let next = Subgroup::generated(g, &gens);
            if target.is_multiple_of(next.order()) && is_pi_number(next.order(), primes) {
                if let Some(h) = grow(g, next, cands, target, primes, budget) {
                    return Some(h);
                }
            }
        }
        None
    }
    let mut budget = 1_000_000;
    grow(g, g.trivial(), &pi_elems, target, primes, &mut budget)
        .ok_or_else(|| Error::SearchExhausted("no Hall subgroup found".into()))
}

/// A quotient group with its projection.
pub struct Quotient {
    pub group: Group,
    pub projection: Vec<usize>,
}

pub fn quotient_by_normal(g: &Group, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal() {
        return Err(Error::Precondition("subgroup is not normal".into()));
    }
    let mut coset = vec![u32::MAX; g.order];
    let mut reps = Vec::new();
    for x in 0..g.order {
        if coset[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in n.members() {
            coset[g.product(x, m)] = id;
        }
    }
    let gens: Vec<u32> = g.generators.iter().map(|&x| coset[x]).collect();
    let label = format!("{}/{}", g.label, n.order());
    let (q, elems) = closure(
        &label,
        coset[0],
        &gens,
        |a: &u32, b: &u32| coset[g.product(reps[*a as usize], reps[*b as usize])],
        |a: &u32| coset[g.inverse(reps[*a as usize])],
        ORDER_CAP,
    )?;
    let mut renum = vec![0usize; reps.len()];
    for (i, &c) in elems.iter().enumerate() {
        renum[c as usize] = i;
    }
    let projection: Vec<usize> = coset.iter().map(|&c| renum[c as usize]).collect();
    let q = Arc::new(q);
    for a in 0..g.order {
        for &b in &g.generators {
            if projection[g.product(a, b)] != q.product(projection[a], projection[b]) {
                return Err(Error::Internal("quotient projection is not a homomorphism".into()));
            }
        }
    }
    Ok(Quotient { group: q, projection })
}

/// Direct product, generated by `(g,1)` and `(1,h)` for the factors' generators.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let mut gens: Vec<(usize, usize)> = a.generators.iter().map(|&x| (x, 0)).collect();
    gens.extend(b.generators.iter().map(|&y| (0, y)));
    let label = format!("{}x{}", a.label, b.label);
    let (g, _) = closure(
        &label,
        (0usize, 0usize),
        &gens,
        |p: &(usize, usize), q: &(usize, usize)| (a.product(p.0, q.0), b.product(p.1, q.1)),
        |p: &(usize, usize)| (a.inverse(p.0), b.inverse(p.1)),
        ORDER_CAP,
    )?;
    Ok(Arc::new(g))
}

/// Direct product identified along central subgroups: each pair `(c, c')`
/// declares `c` in `a` equal to `c'` in `b`.
pub fn amalgamated_central_product(a: &Group, b: &Group, pairs: &[(usize, usize)]) -> Result<Group> {
    let central = |g: &Group, x: usize| g.generators.iter().all(|&s| g.product(x, s) == g.product(s, x));
    for &(x, y) in pairs {
        if !central(a, x) || !central(b, y) {
            return Err(Error::Precondition("identified elements must be central".into()));
        }
    }
    let ca = Subgroup::generated(a, &pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    let cb = Subgroup::generated(b, &pairs.iter().map(|p| p.1).collect::<Vec<_>>());
    // the graph of the identification must be a group isomorphic to both sides
    let mut graph = vec![(0usize, 0usize)];
    let mut i = 0;
    while i < graph.len() {
        let (x, y) = graph[i];
        for &(p, q) in pairs {
            let z = (a.product(x, p), b.product(y, q));
            if !graph.contains(&z) {
                graph.push(z);
            }
        }
        i += 1;
    }
    if graph.len() != ca.order() || graph.len() != cb.order() {
        return Err(Error::Precondition("identification is not an isomorphism".into()));
    }
    let mut gens: Vec<(usize, usize)> = a.generators.iter().map(|&x| (x, 0)).collect();
    gens.extend(b.generators.iter().map(|&y| (0, y)));
    let label = format!("{}*{}", a.label, b.label);
    let (prod, elems) = closure(
        &label,
        (0usize, 0usize),
        &gens,
        |p: &(usize, usize), q: &(usize, usize)| (a.product(p.0, q.0), b.product(p.1, q.1)),
        |p: &(usize, usize)| (a.inverse(p.0), b.inverse(p.1)),
        ORDER_CAP,
    )?;
    let prod = Arc::new(prod);
    let locate: HashMap<(usize, usize), usize> =
        elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let kernel: Vec<usize> = graph.iter().map(|&(x, y)| locate[&(x, b.inverse(y))]).collect();
    let k = Subgroup::generated(&prod, &kernel);
    let q = quotient_by_normal(&prod, &k)?;
    let g = Arc::try_unwrap(q.group).unwrap_or_else(|arc| (*arc).clone_shallow());
    Ok(Arc::new(g.with_label(&label)))
}

impl FiniteGroup {
    fn clone_shallow(&self) -> FiniteGroup {
        FiniteGroup {
            label: self.label.clone(),
            order: self.order,
            ngens: self.ngens,
            generators: self.generators.clone(),
            right: self.right.clone(),
            parent: self.parent.clone(),
            via: self.via.clone(),
            table: self.table.clone(),
            inverse: self.inverse.clone(),
            perms: self.perms.clone(),
            classes: OnceLock::new(),
        }
    }
}

/// Group built from 2x2 matrices over `F_p`, stored as `[a, b, c, d]`.
pub fn matrix_group_mod_p(label: &str, p: u32, gens: &[[u32; 4]]) -> Result<FiniteGroup> {
    let mul = |x: &[u32; 4], y: &[u32; 4]| {
        [
            (x[0] * y[0] + x[1] * y[2]) % p,
            (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p,
        ]
    };
    let inv = |x: &[u32; 4]| {
        let det = (x[0] * x[3] + p * p - x[1] * x[2] % p) % p;
        let mut di = 1;
        while det * di % p != 1 {
            di += 1;
        }
        [x[3] * di % p, (p - x[1]) * di % p, (p - x[2]) * di % p, x[0] * di % p]
    };
    Ok(closure(label, [1, 0, 0, 1], gens, mul, inv, ORDER_CAP)?.0)
}

/// Named groups: `S3 S4 A4 A5 V Z/n Q8 SL(2,3) GL(2,3) D<n>` and a few more.
pub fn named_group(name: &str) -> Result<Group> {
    let name = name.trim();
    let cyc = |pts: &[usize], d: usize| -> Vec<usize> {
        let mut p: Vec<usize> = (0..d).collect();
        for w in 0..pts.len() {
            p[pts[w]] = pts[(w + 1) % pts.len()];
        }
        p
    };
    let perm = |label: &str, d: usize, gens: &[&str]| -> Result<Group> {
        let g: Vec<Vec<usize>> = gens.iter().map(|s| parse_cycles(s, d)).collect::<Result<_>>()?;
        Ok(Arc::new(FiniteGroup::from_permutations(label, d, &g)?))
    };
    match name {
        "S3" => perm("S3", 3, &["(1 2)", "(1 2 3)"]),
        "S4" => perm("S4", 4, &["(1 2)", "(1 2 3 4)"]),
        "A4" => perm("A4", 4, &["(1 2)(3 4)", "(1 2 3)"]),
        "A5" => perm("A5", 5, &["(1 2 3)", "(1 2 3 4 5)"]),
        "S5" => perm("S5", 5, &["(1 2)", "(1 2 3 4 5)"]),
        "V" | "V4" => perm("V", 4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
        "Q8" => Ok(Arc::new(matrix_group_mod_p("Q8", 3, &[[0, 2, 1, 0], [1, 1, 1, 2]])?)),
        "SL(2,3)" => Ok(Arc::new(matrix_group_mod_p("SL(2,3)", 3, &[[1, 1, 0, 1], [1, 0, 1, 1]])?)),
        "GL(2,3)" => Ok(Arc::new(matrix_group_mod_p(
            "GL(2,3)",
            3,
            &[[1, 1, 0, 1], [1, 0, 1, 1], [1, 0, 0, 2]],
        )?)),
        "Q16" => Ok(Arc::new(
            FiniteGroup::from_permutations("Q16", 16, &quaternion_regular(8))?,
        )),
        "SD16" => perm("SD16", 8, &["(1 2 3 4 5 6 7 8)", "(2 4)(3 7)(6 8)"]),
        "Dic3" => {
            // Z/3 semidirect Z/4, on 7 points
            perm("Dic3", 7, &["(1 2 3)", "(1 2)(4 5 6 7)"])
        }
        _ => {
            if let Some(n) = name.strip_prefix("Z/") {
                let n: usize = n.parse().map_err(|_| Error::Input(format!("unknown group `{name}`")))?;
                if n == 0 || n > DEGREE_CAP {
                    return Err(Error::Input(format!("Z/{n} outside supported range")));
                }
                let pts: Vec<usize> = (0..n).collect();
                return Ok(Arc::new(FiniteGroup::from_permutations(name, n, &[cyc(&pts, n)])?));
            }
            if let Some(n) = name.strip_prefix('D') {
                if let Ok(n) = n.parse::<usize>() {
                    if (3..=DEGREE_CAP).contains(&n) {
                        let pts: Vec<usize> = (0..n).collect();
                        let mut refl: Vec<usize> = (0..n).collect();
                        for i in 0..n {
                            refl[i] = (n - i) % n;
                        }
                        return Ok(Arc::new(FiniteGroup::from_permutations(
                            name,
                            n,
                            &[cyc(&pts, n), refl],
                        )?));
                    }
                }
            }
            Err(Error::Input(format!("unknown group `{name}`")))
        }
    }
}

/// Regular representation generators of the generalised quaternion group of order `2m`.
fn quaternion_regular(m: usize) -> Vec<Vec<usize>> {
    // elements a^i b^j, i < m, j < 2, with a^m = 1, b^2 = a^(m/2), b a b^-1 = a^-1
    let n = 2 * m;
    let idx = |i: usize, j: usize| j * m + (i % m);
    let mul = |(i1, j1): (usize, usize), (i2, j2): (usize, usize)| -> (usize, usize) {
        if j1 == 0 {
            ((i1 + i2) % m, j2)
        } else {
            // b a^i2 = a^-i2 b
            let i = (i1 + m - i2 % m) % m;
            if j2 == 0 {
                (i, 1)
            } else {
                ((i + m / 2) % m, 0)
            }
        }
    };
    let elems: Vec<(usize, usize)> = (0..n).map(|k| (k % m, k / m)).collect();
    [(1, 0), (0, 1)]
        .iter()
        .map(|&g| elems.iter().map(|&e| {
            let (i, j) = mul(e, g);
            idx(i, j)
        }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(g: &Group) -> Vec<(usize, usize)> {
        let c = g.classes();
        (0..c.len()).map(|i| (c.rep_order(i), c.size(i))).collect()
    }

    #[test]
    fn orders_of_named_groups() {
        for (n, o) in [("S3", 6), ("S4", 24), ("A4", 12), ("A5", 60), ("V", 4), ("Q8", 8),
            ("SL(2,3)", 24), ("GL(2,3)", 48), ("Z/7", 7), ("D4", 8), ("Q16", 16), ("SD16", 16), ("Dic3", 12)] {
            assert_eq!(named_group(n).unwrap().order(), o, "{n}");
        }
    }

    #[test]
    fn s4_classes() {
        let g = named_group("S4").unwrap();
        assert_eq!(names(&g), vec![(1, 1), (2, 3), (2, 6), (3, 8), (4, 6)]);
        assert_eq!(g.exponent(), 12);
    }

    #[test]
    fn identity_first_and_inverses() {
        let g = named_group("GL(2,3)").unwrap();
        for x in 0..g.order() {
            assert_eq!(g.product(x, g.inverse(x)), 0);
            assert_eq!(g.product(0, x), x);
        }
    }

    #[test]
    fn parse_file_format() {
        let g = FiniteGroup::parse("t", "# S3\ndegree: 3\ngen: (1 2)\ngen: (1 2 3) # rotation\n").unwrap();
        assert_eq!(g.order(), 6);
        assert!(FiniteGroup::parse("t", "gen: (1 2)").is_err());
        assert!(FiniteGroup::parse("t", "degree: 3\ngen: (1 4)").is_err());
        assert!(FiniteGroup::parse("t", "degree: 3\ngen: (1 2)(2 3)").is_err());
    }

    #[test]
    fn cycle_names() {
        let g = named_group("S3").unwrap();
        assert_eq!(g.element_name(0), "()");
        assert_eq!(g.element_name(g.generators()[0]), "(1 2)");
    }

    #[test]
    fn derived_series_s4() {
        let g = named_group("S4").unwrap();
        let orders: Vec<usize> = derived_series(&g).iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(is_solvable(&g));
        assert!(!is_solvable(&named_group("A5").unwrap()));
    }

    #[test]
    fn low_index_counts() {
        let s4 = named_group("S4").unwrap();
        assert_eq!(subgroups_of_index(&s4, 2).unwrap().len(), 1);
        assert_eq!(subgroups_of_index(&s4, 3).unwrap().len(), 3);
        assert_eq!(subgroups_of_index(&s4, 4).unwrap().len(), 4);
        assert_eq!(subgroups_of_index(&s4, 6).unwrap().len(), 7);
        assert_eq!(subgroups_of_index(&s4, 8).unwrap().len(), 4);
        let a4 = named_group("A4").unwrap();
        assert_eq!(subgroups_of_index(&a4, 2).unwrap().len(), 0);
        assert_eq!(subgroups_of_index(&a4, 3).unwrap().len(), 1);
        let v = named_group("V").unwrap();
        assert_eq!(subgroups_of_index(&v, 2).unwrap().len(), 3);
        assert!(subgroups_of_index(&v, 9).is_err());
    }

    #[test]
    fn index_two_agrees() {
        for n in ["S4", "V", "D4", "Q8", "Z/6", "GL(2,3)", "SD16"] {
            let g = named_group(n).unwrap();
            assert_eq!(subgroups_of_index(&g, 2).unwrap(), index_two_subgroups(&g), "{n}");
        }
    }

    #[test]
    fn hall_of_s4() {
        let g = named_group("S4").unwrap();
        assert_eq!(hall_subgroup(&g, &[2]).unwrap().order(), 8);
        assert_eq!(hall_subgroup(&g, &[3]).unwrap().order(), 3);
        assert!(hall_subgroup(&named_group("A5").unwrap(), &[2, 5]).is_err());
    }

    #[test]
    fn quotients_and_products() {
        let g = named_group("GL(2,3)").unwrap();
        let z = g.center();
        assert_eq!(z.order(), 2);
        let q = quotient_by_normal(&g, &z).unwrap();
        assert_eq!(q.group.order(), 24);
        let mut sizes: Vec<usize> = q.group.classes().sizes().to_vec();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let p = direct_product(&named_group("S3").unwrap(), &named_group("Z/2").unwrap()).unwrap();
        assert_eq!(p.order(), 12);
    }

    #[test]
    fn pauli_group_order() {
        let z4 = named_group("Z/4").unwrap();
        let q8 = named_group("Q8").unwrap();
        let minus = q8.center().members()[1];
        let two = z4.power(z4.generators()[0], 2);
        let g = amalgamated_central_product(&z4, &q8, &[(two, minus)]).unwrap();
        assert_eq!(g.order(), 16);
        assert!(amalgamated_central_product(&z4, &q8, &[(z4.generators()[0], minus)]).is_err());
    }

    #[test]
    fn power_class_well_defined() {
        let g = named_group("SL(2,3)").unwrap();
        let c = g.classes();
        for cl in 0..c.len() {
            for k in -3..7 {
                let target = c.power_class(&g, cl, k);
                for m in c.members(cl) {
                    assert_eq!(c.class_of(g.power(m, k)), target);
                }
            }
        }
    }

    #[test]
    fn embedding_fusion() {
        let g = named_group("S4").unwrap();
        let a4 = subgroups_of_index(&g, 2).unwrap().remove(0);
        let e = a4.embed();
        assert_eq!(e.group.order(), 12);
        assert_eq!(e.fusion().len(), 4);
    }
}
