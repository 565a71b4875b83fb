//! Finite groups as explicit multiplication tables.
//!
//! Element id 0 is always the identity. Every constructor enumerates
//! elements in a fixed order so that labels, subgroup lists and every
//! report built on top of them are reproducible.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::Serialize;

use crate::caps::Caps;
use crate::elements::{Elem, ElementSet};
use crate::error::{Error, Result};
use crate::expr::GroupExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    labels: Vec<String>,
    generators: Vec<Elem>,
}

/// A subgroup of some parent [`GroupTable`], given by its sorted member ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    pub members: Vec<Elem>,
    pub is_normal: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupInfo {
    pub order: usize,
    pub element_orders: Vec<usize>,
    pub center: Subgroup,
}

/// Whether a group is a p-group, and for which prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PGroup {
    /// The trivial group, a p-group for every p.
    Trivial,
    Prime(u64),
    /// Witness: an element whose order is not a prime power, or two
    /// elements of coprime prime-power orders.
    Not { witness: Elem },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupPredicate {
    PGroup(u64),
    Dedekind,
    Prime,
    LocallyNormal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupWitness {
    Element(Elem),
    Subgroup(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateOutcome {
    pub holds: bool,
    pub witness: Option<GroupWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NuSigma {
    pub nu: BTreeSet<usize>,
    pub sigma: Subgroup,
}

/// Builds a group from a descriptor, enforcing the group-order cap.
pub fn make_group(expr: &GroupExpr, caps: &Caps) -> Result<GroupTable> {
    let order = expr.order();
    caps.require("group", order, caps.max_group_order)?;
    let g = match expr {
        GroupExpr::Cyclic(n) => cyclic(*n as usize)?,
        GroupExpr::Dihedral(n) => dihedral(*n as usize)?,
        GroupExpr::Quaternion8 => quaternion8(),
        GroupExpr::Symmetric(n) => symmetric(*n as usize)?,
        GroupExpr::Product(a, b) => {
            let ga = make_group(a, caps)?;
            let gb = make_group(b, caps)?;
            direct_product(&ga, &gb)
        }
    };
    let mut g = g;
    g.name = expr.to_string();
    if let Some(bad) = g.validate() {
        return Err(Error::InvalidDescriptor(format!(
            "constructed table for {} violates the group axioms at {bad:?}",
            g.name
        )));
    }
    Ok(g)
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidDescriptor("cyclic group needs n >= 1".into()));
    }
    let elems: Vec<usize> = (0..n).collect();
    Ok(from_elements(
        &format!("C{n}"),
        &elems,
        |a, b| (a + b) % n,
        |&k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        },
        &[if n > 1 { 1 } else { 0 }],
    ))
}

/// Dihedral group of order 2n: elements r^i s^j stored as (i, j).
pub fn dihedral(n: usize) -> Result<GroupTable> {
    if n < 2 {
        return Err(Error::InvalidDescriptor("dihedral group needs n >= 2".into()));
    }
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..n).map(move |i| (i, j))).collect();
    let label = |&(i, j): &(usize, usize)| {
        let r = match i {
            0 => String::new(),
            1 => "r".to_string(),
            i => format!("r^{i}"),
        };
        match (r.is_empty(), j) {
            (true, 0) => "1".to_string(),
            (false, 0) => r,
            (_, _) => format!("{r}s"),
        }
    };
    Ok(from_elements(
        &format!("D{n}"),
        &elems,
        |&(a, b), &(c, d)| {
            let c = if b == 1 { (n - c) % n } else { c };
            ((a + c) % n, (b + d) % 2)
        },
        label,
        &[(1, 0), (0, 1)],
    ))
}

pub fn quaternion8() -> GroupTable {
    // (sign, unit) with unit 0..4 = 1, i, j, k.
    const UNIT_MUL: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let elems: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
    from_elements(
        "Q8",
        &elems,
        |&(s, u), &(t, v)| {
            let (neg, w) = UNIT_MUL[u][v];
            (s ^ t ^ neg, w)
        },
        |&(s, u)| {
            let name = ["1", "i", "j", "k"][u];
            if s {
                format!("-{name}")
            } else {
                name.to_string()
            }
        },
        &[(false, 1), (false, 2)],
    )
}

/// Symmetric group on {1..n}, elements in lexicographic order of their
/// one-line notation; product is composition `(στ)(x) = σ(τ(x))`.
pub fn symmetric(n: usize) -> Result<GroupTable> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidDescriptor(
            "symmetric group needs 1 <= n <= 4".into(),
        ));
    }
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
    perms.sort();
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        if n >= 3 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
    } else {
        gens.push(vec![0]);
    }
    Ok(from_elements(
        &format!("S{n}"),
        &perms,
        |s, t| t.iter().map(|&x| s[x]).collect(),
        |p| cycle_notation(p),
        &gens,
    ))
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        "1".to_string()
    } else {
        out
    }
}

pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let nb = b.order;
    let n = a.order * nb;
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            mul[x * n + y] =
                a.mul(xa as Elem, ya as Elem) * nb as Elem + b.mul(xb as Elem, yb as Elem);
        }
    }
    let inv = (0..n)
        .map(|x| a.inv(x / nb) * nb as Elem + b.inv(x % nb))
        .collect();
    let labels = (0..n)
        .map(|x| {
            if x == 0 {
                "1".to_string()
            } else {
                format!("({},{})", a.labels[x / nb], b.labels[x % nb])
            }
        })
        .collect();
    let mut generators: Vec<Elem> = a.generators.iter().map(|&g| g * nb as Elem).collect();
    generators.extend(b.generators.iter().copied());
    generators.retain(|&g| g != 0);
    GroupTable {
        name: format!("{} x {}", a.name, b.name),
        order: n,
        mul,
        inv,
        labels,
        generators,
    }
}

/// Builds a table from a concrete element list whose first entry is the identity.
fn from_elements<T: Clone + Eq + Hash>(
    name: &str,
    elems: &[T],
    op: impl Fn(&T, &T) -> T,
    label: impl Fn(&T) -> String,
    gens: &[T],
) -> GroupTable {
    let n = elems.len();
    let index: HashMap<&T, Elem> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i as Elem))
        .collect();
    let mut mul = vec![0; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            mul[i * n + j] = index[&op(a, b)];
        }
    }
    let inv = (0..n)
        .map(|i| (0..n).find(|&j| mul[i * n + j] == 0).expect("inverse exists") as Elem)
        .collect();
    let mut generators: Vec<Elem> = gens.iter().map(|g| index[g]).collect();
    generators.retain(|&g| g != 0);
    GroupTable {
        name: name.to_string(),
        order: n,
        mul,
        inv,
        labels: elems.iter().map(label).collect(),
        generators,
    }
}

impl GroupTable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> Elem {
        self.inv[a]
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn label(&self, g: Elem) -> &str {
        &self.labels[g as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    /// Builds a table directly from raw data, checking the axioms.
    pub fn from_table(name: &str, mul: Vec<Elem>, labels: Vec<String>) -> Result<GroupTable> {
        let n = labels.len();
        if mul.len() != n * n || n == 0 || mul.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidDescriptor("malformed group table".into()));
        }
        let inv: Vec<Elem> = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| mul[i * n + j] == 0)
                    .map(|j| j as Elem)
                    .unwrap_or(0)
            })
            .collect();
        let g = GroupTable {
            name: name.to_string(),
            order: n,
            mul,
            inv,
            labels,
            generators: (1..n as Elem).collect(),
        };
        match g.validate() {
            Some(bad) => Err(Error::InvalidDescriptor(format!(
                "group axioms fail at {bad:?}"
            ))),
            None => Ok(g),
        }
    }

    /// Exhaustive axiom check. Returns the first violating triple, if any.
    pub fn validate(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.order as Elem;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Some((0, a, a));
            }
            let ai = self.inv[a as usize];
            if self.mul(a, ai) != 0 || self.mul(ai, a) != 0 {
                return Some((a, ai, 0));
            }
        }
        for a in 0..n {
            let mut row = ElementSet::new(self.order);
            let mut col = ElementSet::new(self.order);
            for b in 0..n {
                if !row.insert(self.mul(a, b)) || !col.insert(self.mul(b, a)) {
                    return Some((a, b, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn power(&self, g: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn info(&self) -> GroupInfo {
        let element_orders = self.elements().map(|g| self.element_order(g)).collect();
        let center: Vec<Elem> = self
            .elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        GroupInfo {
            order: self.order,
            element_orders,
            center: Subgroup {
                members: center,
                is_normal: true,
            },
        }
    }

    pub fn center(&self) -> Subgroup {
        self.info().center
    }

    fn closure_set(&self, seed: impl IntoIterator<Item = Elem>) -> ElementSet {
        let mut set = ElementSet::new(self.order);
        set.insert(0);
        let gens: Vec<Elem> = seed.into_iter().collect();
        let mut queue: VecDeque<Elem> = VecDeque::from([0]);
        for &g in &gens {
            if set.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    fn subgroup_from_set(&self, set: &ElementSet) -> Subgroup {
        let members = set.to_vec();
        let is_normal = self.is_normal_members(&members, set);
        Subgroup { members, is_normal }
    }

    fn is_normal_members(&self, members: &[Elem], set: &ElementSet) -> bool {
        self.elements().all(|g| {
            let gi = self.inv[g as usize];
            members
                .iter()
                .all(|&h| set.contains(self.mul(self.mul(g, h), gi)))
        })
    }

    /// Subgroup generated by a set of elements.
    pub fn generated(&self, seed: &[Elem]) -> Subgroup {
        let set = self.closure_set(seed.iter().copied());
        self.subgroup_from_set(&set)
    }

    /// Validates an arbitrary member list as a subgroup.
    pub fn subgroup(&self, members: &[Elem]) -> Result<Subgroup> {
        if members.iter().any(|&m| m as usize >= self.order) {
            return Err(Error::InvalidDescriptor("subgroup member out of range".into()));
        }
        let set = ElementSet::from_iter_in(self.order, members.iter().copied());
        let closed = set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))));
        if !closed {
            return Err(Error::InvalidDescriptor("member set is not a subgroup".into()));
        }
        Ok(self.subgroup_from_set(&set))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: self.elements().collect(),
            is_normal: true,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: vec![0],
            is_normal: true,
        }
    }

    /// Every subgroup, sorted by (size, members). Built by closing {1} under
    /// "join with one more element"; every subgroup arises this way.
    pub fn all_subgroups(&self, caps: &Caps) -> Result<Vec<Subgroup>> {
        caps.require("group", self.order, caps.max_group_order)?;
        let start = self.closure_set([0]);
        let mut seen: HashSet<ElementSet> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for g in self.elements() {
                if s.contains(g) {
                    continue;
                }
                let joined = self.closure_set(s.iter().chain([g]));
                if seen.insert(joined.clone()) {
                    queue.push_back(joined);
                }
            }
        }
        Ok(self.sorted_subgroups(seen))
    }

    fn sorted_subgroups(&self, sets: HashSet<ElementSet>) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = sets.iter().map(|s| self.subgroup_from_set(s)).collect();
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        out
    }

    /// Every normal subgroup exactly once, sorted by (size, members). A normal
    /// subgroup is the join of the normal closures of its elements, so closing
    /// {1} under joins with normal closures of single elements reaches all.
    pub fn normal_subgroups(&self, caps: &Caps) -> Result<Vec<Subgroup>> {
        caps.require("group", self.order, caps.max_group_order)?;
        let closures: Vec<ElementSet> = self
            .elements()
            .map(|g| self.normal_closure_set(&[g]))
            .collect();
        let start = self.closure_set([0]);
        let mut seen: HashSet<ElementSet> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for (g, ncl) in closures.iter().enumerate() {
                if s.contains(g as Elem) {
                    continue;
                }
                let joined = self.closure_set(s.iter().chain(ncl.iter()));
                if seen.insert(joined.clone()) {
                    queue.push_back(joined);
                }
            }
        }
        Ok(self.sorted_subgroups(seen))
    }

    fn normal_closure_set(&self, seed: &[Elem]) -> ElementSet {
        // Conjugate-close the seed, then subgroup-close; repeat until stable.
        let mut current = ElementSet::from_iter_in(self.order, seed.iter().copied());
        current.insert(0);
        loop {
            let mut conj = current.clone();
            for h in current.iter() {
                for g in self.elements() {
                    conj.insert(self.mul(self.mul(g, h), self.inv[g as usize]));
                }
            }
            let closed = self.closure_set(conj.iter());
            if closed == current {
                return closed;
            }
            current = closed;
        }
    }

    /// Least normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[Elem]) -> Subgroup {
        let set = self.normal_closure_set(seed);
        Subgroup {
            members: set.to_vec(),
            is_normal: true,
        }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let set = ElementSet::from_iter_in(self.order, h.members.iter().copied());
        self.is_normal_members(&h.members, &set)
    }

    pub fn is_central(&self, h: &Subgroup) -> bool {
        h.members
            .iter()
            .all(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
    }

    pub fn p_group(&self) -> PGroup {
        let mut prime = None;
        for g in self.elements().skip(1) {
            match prime_power_base(self.element_order(g) as u64) {
                None => return PGroup::Not { witness: g },
                Some(p) => match prime {
                    None => prime = Some(p),
                    Some(q) if q != p => return PGroup::Not { witness: g },
                    _ => {}
                },
            }
        }
        match prime {
            None => PGroup::Trivial,
            Some(p) => PGroup::Prime(p),
        }
    }

    pub fn predicate(&self, pred: GroupPredicate, caps: &Caps) -> Result<PredicateOutcome> {
        Ok(match pred {
            GroupPredicate::PGroup(p) => {
                let bad = self
                    .elements()
                    .find(|&g| !is_power_of(self.element_order(g) as u64, p));
                PredicateOutcome {
                    holds: bad.is_none(),
                    witness: bad.map(GroupWitness::Element),
                }
            }
            GroupPredicate::Dedekind => {
                let bad = self.all_subgroups(caps)?.into_iter().find(|s| !s.is_normal);
                PredicateOutcome {
                    holds: bad.is_none(),
                    witness: bad.map(|s| GroupWitness::Subgroup(s.members)),
                }
            }
            GroupPredicate::Prime => {
                // nu(G) = {1}: no nontrivial finite normal subgroup.
                let bad = self
                    .normal_subgroups(caps)?
                    .into_iter()
                    .find(|s| !s.is_trivial());
                PredicateOutcome {
                    holds: bad.is_none(),
                    witness: bad.map(|s| GroupWitness::Subgroup(s.members)),
                }
            }
            // sigma(G) = G for every finite group.
            GroupPredicate::LocallyNormal => PredicateOutcome {
                holds: true,
                witness: None,
            },
        })
    }

    pub fn nu_sigma(&self, caps: &Caps) -> Result<NuSigma> {
        let nu = self
            .normal_subgroups(caps)?
            .iter()
            .map(Subgroup::order)
            .collect();
        Ok(NuSigma {
            nu,
            sigma: self.whole(),
        })
    }

    /// G/H with cosets numbered by their least member. Returns the quotient
    /// and the projection g -> gH.
    pub fn quotient(&self, h: &Subgroup) -> Result<(GroupTable, Vec<Elem>)> {
        if !self.is_normal(h) {
            return Err(Error::NotNormal);
        }
        let mut proj = vec![Elem::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if proj[g as usize] != Elem::MAX {
                continue;
            }
            let c = reps.len() as Elem;
            reps.push(g);
            for &x in &h.members {
                proj[self.mul(g, x) as usize] = c;
            }
        }
        let m = reps.len();
        let mut mul = vec![0; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = proj[self.mul(a, b) as usize];
            }
        }
        let labels = reps
            .iter()
            .map(|&r| {
                if r == 0 {
                    "1".to_string()
                } else {
                    format!("[{}]", self.label(r))
                }
            })
            .collect();
        let mut q = GroupTable::from_table(&format!("{}/H", self.name), mul, labels)?;
        let mut gens: Vec<Elem> = self.generators.iter().map(|&g| proj[g as usize]).collect();
        gens.sort_unstable();
        gens.dedup();
        gens.retain(|&g| g != 0);
        q.generators = gens;
        Ok((q, proj))
    }

    /// The subgroup H as a group in its own right; returns the table and the
    /// embedding (new id -> id in self). Member order is preserved, so the
    /// identity stays at id 0.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<(GroupTable, Vec<Elem>)> {
        let index: HashMap<Elem, Elem> = h
            .members
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as Elem))
            .collect();
        let m = h.members.len();
        let mut mul = vec![0; m * m];
        for (i, &a) in h.members.iter().enumerate() {
            for (j, &b) in h.members.iter().enumerate() {
                mul[i * m + j] = *index
                    .get(&self.mul(a, b))
                    .ok_or_else(|| Error::InvalidDescriptor("not a subgroup".into()))?;
            }
        }
        let labels = h.members.iter().map(|&g| self.label(g).to_string()).collect();
        let g = GroupTable::from_table(&format!("H<{}", self.name), mul, labels)?;
        Ok((g, h.members.clone()))
    }
}

fn is_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Returns p if n = p^k with k >= 1.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    is_power_of(n, p).then_some(p)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupTable {
        let expr: GroupExpr = crate::expr::parse_group(s).unwrap();
        make_group(&expr, &Caps::default()).unwrap()
    }

    fn orders(sgs: &[Subgroup]) -> Vec<usize> {
        sgs.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn trivial_and_cyclic() {
        let c1 = g("C1");
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.labels(), ["1"]);
        let c6 = g("C6");
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(c6.label(3), "x^3");
    }

    #[test]
    fn klein_orders_by_exhaustion() {
        let v = g("C2 x C2");
        assert_eq!(v.order(), 4);
        assert!(v.elements().skip(1).all(|x| v.element_order(x) == 2));
    }

    #[test]
    fn centers() {
        let c6 = g("C6");
        assert_eq!(c6.center().order(), 6);
        let d4 = g("D4");
        let z = d4.center();
        assert_eq!(z.order(), 2);
        // r^2 has id 2 in the (i, j) enumeration.
        assert_eq!(z.members, vec![0, 2]);
        assert_eq!(d4.label(2), "r^2");
    }

    #[test]
    fn s3_element_orders() {
        let s3 = g("S3");
        let mut os = s3.info().element_orders;
        os.sort_unstable();
        assert_eq!(os, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn normal_subgroup_counts() {
        let caps = Caps::default();
        assert_eq!(orders(&g("C5").normal_subgroups(&caps).unwrap()), vec![1, 5]);
        assert_eq!(orders(&g("S3").normal_subgroups(&caps).unwrap()), vec![1, 3, 6]);
        assert_eq!(
            orders(&g("Q8").normal_subgroups(&caps).unwrap()),
            vec![1, 2, 4, 4, 4, 8]
        );
        assert_eq!(orders(&g("S4").normal_subgroups(&caps).unwrap()), vec![1, 4, 12, 24]);
    }

    #[test]
    fn normal_subgroups_agree_with_filtered_subgroups() {
        let caps = Caps::default();
        for s in ["C6", "S3", "D4", "Q8", "C2 x C2", "S4", "D6", "C2 x S3", "C4 x C2"] {
            let grp = g(s);
            let all = grp.all_subgroups(&caps).unwrap();
            let normal: Vec<_> = all.iter().filter(|h| h.is_normal).cloned().collect();
            assert_eq!(normal, grp.normal_subgroups(&caps).unwrap(), "{s}");
        }
    }

    #[test]
    fn subgroup_lattice_sizes() {
        let caps = Caps::default();
        // Known subgroup counts.
        assert_eq!(g("S3").all_subgroups(&caps).unwrap().len(), 6);
        assert_eq!(g("D4").all_subgroups(&caps).unwrap().len(), 10);
        assert_eq!(g("S4").all_subgroups(&caps).unwrap().len(), 30);
        assert_eq!(g("C2 x C2 x C2").all_subgroups(&caps).unwrap().len(), 16);
    }

    #[test]
    fn predicates() {
        let caps = Caps::default();
        assert!(g("C4").predicate(GroupPredicate::PGroup(2), &caps).unwrap().holds);
        let prime = g("C6").predicate(GroupPredicate::Prime, &caps).unwrap();
        assert!(!prime.holds);
        assert_eq!(prime.witness, Some(GroupWitness::Subgroup(vec![0, 3])));
        assert!(g("Q8").predicate(GroupPredicate::Dedekind, &caps).unwrap().holds);
        assert!(!g("S3").predicate(GroupPredicate::Dedekind, &caps).unwrap().holds);
        for s in ["C1", "S3", "Q8"] {
            assert!(g(s).predicate(GroupPredicate::LocallyNormal, &caps).unwrap().holds);
        }
        assert_eq!(g("C1").p_group(), PGroup::Trivial);
        assert_eq!(g("D4").p_group(), PGroup::Prime(2));
        assert!(matches!(g("C6").p_group(), PGroup::Not { .. }));
    }

    #[test]
    fn nu_values() {
        let caps = Caps::default();
        let nu = |s: &str| g(s).nu_sigma(&caps).unwrap().nu.into_iter().collect::<Vec<_>>();
        assert_eq!(nu("C1"), vec![1]);
        assert_eq!(nu("S3"), vec![1, 3, 6]);
        assert_eq!(nu("C2 x C2"), vec![1, 2, 4]);
        assert_eq!(g("S3").nu_sigma(&caps).unwrap().sigma.order(), 6);
    }

    #[test]
    fn normal_closures() {
        let caps = Caps::default();
        let s3 = g("S3");
        assert!(s3.normal_closure(&[0]).is_trivial());
        let t = (0..6).find(|&x| s3.label(x) == "(1 2)").unwrap();
        assert_eq!(s3.normal_closure(&[t]).order(), 6);
        assert_eq!(g("C6").normal_closure(&[3]).members, vec![0, 3]);
        // Minimal normal subgroup containing the seed.
        for s in ["S4", "D4", "Q8", "C2 x S3"] {
            let grp = g(s);
            let normals = grp.normal_subgroups(&caps).unwrap();
            for x in grp.elements() {
                let ncl = grp.normal_closure(&[x]);
                let least = normals.iter().find(|n| n.contains(x)).unwrap();
                assert_eq!(&ncl.members, &least.members, "{s} {x}");
            }
        }
    }

    #[test]
    fn quotients() {
        let caps = Caps::default();
        let c6 = g("C6");
        let (q, _) = c6.quotient(&c6.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let h = c6.generated(&[3]);
        let (q, proj) = c6.quotient(&h).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.element_order(1), 3);
        let s3 = g("S3");
        let a3 = s3.normal_subgroups(&caps).unwrap()[1].clone();
        assert_eq!(s3.quotient(&a3).unwrap().0.order(), 2);
        // proj is a homomorphism with kernel H.
        for a in c6.elements() {
            assert_eq!(proj[a as usize] == 0, h.contains(a));
            for b in c6.elements() {
                assert_eq!(
                    proj[c6.mul(a, b) as usize],
                    q.mul(proj[a as usize], proj[b as usize])
                );
            }
        }
        let non_normal = s3.generated(&[1]);
        assert!(!non_normal.is_normal);
        assert_eq!(s3.quotient(&non_normal).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn caps_and_bad_descriptors() {
        let caps = Caps {
            max_group_order: 10,
            ..Caps::default()
        };
        let e = make_group(&GroupExpr::Symmetric(4), &caps).unwrap_err();
        assert!(e.is_cap());
        assert!(symmetric(5).is_err());
        assert!(dihedral(1).is_err());
    }

    #[test]
    fn prime_power_helper() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(1), None);
        assert!(is_prime(7) && !is_prime(9));
    }
}
