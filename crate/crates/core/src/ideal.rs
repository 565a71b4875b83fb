//! Two-sided ideals, their arithmetic, and every ideal-level predicate and
//! radical, decided exhaustively.
//!
//! Ideals are stored as member bitsets plus an additive basis (a list of
//! elements whose additive span is the ideal). Products of ideals are the
//! additive span of basis products, and closure under multiplication only
//! needs to be checked on the ring's additive generators, so no routine
//! here ever loops over all pairs of ring elements except the Jacobson
//! unit scan.
//!
//! The property checks quantify over principal ideals only. In a finite ring
//! every ideal is a finite sum of principal ideals, and a finite sum of
//! ideals nilpotent modulo I is nilpotent modulo I, so the principal-pair
//! test decides the all-ideals definitions. [`IdealLattice`] re-decides each
//! property over every ideal for small rings to validate that reduction.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::elements::{Elem, ElementSet};
use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::span::AdditiveSpan;

#[derive(Clone)]
pub struct Ideal {
    ring_uid: u64,
    members: ElementSet,
    size: usize,
    generators: Vec<Elem>,
    basis: Vec<Elem>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring_uid == other.ring_uid && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("size", &self.size)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Ideal {
    fn from_span(ring: &FiniteRing, span: AdditiveSpan<'_>, generators: Vec<Elem>) -> Ideal {
        let (members, basis) = span.into_parts();
        Ideal {
            ring_uid: ring.uid(),
            size: members.count(),
            members,
            generators,
            basis,
        }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.members.to_vec()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Elements whose additive span is the ideal.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_zero(&self) -> bool {
        self.size == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size == self.members.universe()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn ring_uid(&self) -> u64 {
        self.ring_uid
    }

    pub fn belongs_to(&self, ring: &FiniteRing) -> Result<()> {
        if self.ring_uid == ring.uid() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Serializable summary: members are reproducible from the generators.
    pub fn summary(&self, ring: &FiniteRing) -> IdealSummary {
        IdealSummary {
            ring: ring.provenance().to_string(),
            generators: self.generators.iter().map(|&g| ring.label(g)).collect(),
            size: self.size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSummary {
    pub ring: String,
    pub generators: Vec<String>,
    pub size: usize,
}

fn ideal_ring_cap(ring: &FiniteRing, caps: &Caps) -> Result<()> {
    caps.require("ring (ideal enumeration)", ring.size(), caps.max_ideal_ring_size)
}

pub fn zero_ideal(ring: &FiniteRing) -> Ideal {
    Ideal::from_span(ring, AdditiveSpan::new(ring), vec![])
}

pub fn whole_ideal(ring: &FiniteRing) -> Ideal {
    let mut span = AdditiveSpan::new(ring);
    for &g in ring.additive_gens() {
        span.insert(g);
    }
    Ideal::from_span(ring, span, vec![ring.one()])
}

/// Grows an additive span until it is closed under left and right
/// multiplication by the ring's additive generators.
fn close_span(ring: &FiniteRing, span: &mut AdditiveSpan<'_>, caps: &Caps) -> Result<()> {
    let gens = ring.additive_gens();
    let mut queue: VecDeque<Elem> = span.basis().iter().copied().collect();
    while let Some(y) = queue.pop_front() {
        caps.check_deadline()?;
        for &t in gens {
            for z in [ring.mul(t, y), ring.mul(y, t)] {
                if span.insert(z) {
                    queue.push_back(z);
                }
            }
        }
    }
    Ok(())
}

/// The least two-sided ideal containing `gens`.
pub fn ideal_closure(ring: &FiniteRing, gens: &[Elem], caps: &Caps) -> Result<Ideal> {
    ideal_ring_cap(ring, caps)?;
    let mut span = AdditiveSpan::new(ring);
    for &g in gens {
        ring.check_elem(g)?;
        span.insert(g);
    }
    close_span(ring, &mut span, caps)?;
    let mut generators: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
    generators.dedup();
    Ok(Ideal::from_span(ring, span, generators))
}

/// Wraps an arbitrary member set as an ideal after verifying closure.
pub fn ideal_from_members(ring: &FiniteRing, members: &ElementSet, caps: &Caps) -> Result<Ideal> {
    let gens = additive_basis_of(ring, members);
    let closed = ideal_closure(ring, &gens, caps)?;
    if &closed.members != members {
        return Err(Error::InvalidIdeal(
            "member set is not a two-sided ideal".into(),
        ));
    }
    Ok(closed)
}

fn additive_basis_of(ring: &FiniteRing, members: &ElementSet) -> Vec<Elem> {
    let mut span = AdditiveSpan::new(ring);
    let mut gens = Vec::new();
    for x in members.iter() {
        if span.insert(x) {
            gens.push(x);
        }
    }
    gens
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Power(usize),
}

pub fn sum(ring: &FiniteRing, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.belongs_to(ring)?;
    j.belongs_to(ring)?;
    let mut span = AdditiveSpan::from_parts(ring, &i.members, &i.basis);
    for &b in &j.basis {
        span.insert(b);
    }
    let mut gens = i.generators.clone();
    gens.extend(&j.generators);
    Ok(Ideal::from_span(ring, span, gens))
}

/// IJ: the additive span of products of basis elements. For two-sided
/// ideals this is already a two-sided ideal.
pub fn product(ring: &FiniteRing, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.belongs_to(ring)?;
    j.belongs_to(ring)?;
    let mut span = AdditiveSpan::new(ring);
    for &a in &i.basis {
        for &b in &j.basis {
            span.insert(ring.mul(a, b));
        }
    }
    let gens = span.basis().to_vec();
    Ok(Ideal::from_span(ring, span, gens))
}

pub fn power(ring: &FiniteRing, i: &Ideal, k: usize) -> Result<Ideal> {
    if k == 0 {
        return Err(Error::InvalidIdeal("ideal powers start at 1".into()));
    }
    let mut acc = i.clone();
    for _ in 1..k {
        acc = product(ring, &acc, i)?;
    }
    Ok(acc)
}

pub fn ideal_arith(ring: &FiniteRing, op: IdealOp, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    match op {
        IdealOp::Sum => sum(ring, i, j),
        IdealOp::Product => product(ring, i, j),
        IdealOp::Power(k) => power(ring, i, k),
    }
}

pub fn intersection(ring: &FiniteRing, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.belongs_to(ring)?;
    j.belongs_to(ring)?;
    let members = i.members.intersection(&j.members);
    let mut span = AdditiveSpan::new(ring);
    for x in members.iter() {
        span.insert(x);
    }
    let gens = span.basis().to_vec();
    Ok(Ideal::from_span(ring, span, gens))
}

/// Whether PQ ⊆ I.
pub fn product_within(ring: &FiniteRing, p: &Ideal, q: &Ideal, i: &Ideal) -> bool {
    p.basis
        .iter()
        .all(|&a| q.basis.iter().all(|&b| i.contains(ring.mul(a, b))))
}

/// Least k with P^k ⊆ I, or None if the chain P + I ⊇ P² + I ⊇ … stabilizes
/// strictly above I.
pub fn nilpotency_index_mod(ring: &FiniteRing, p: &Ideal, i: &Ideal, caps: &Caps) -> Result<Option<usize>> {
    if p.is_subset(i) {
        return Ok(Some(1));
    }
    // S_k = P^k + I; S_{k+1} = P·S_k + I.
    let mut current = {
        let mut s = AdditiveSpan::from_parts(ring, &i.members, &i.basis);
        for &b in &p.basis {
            s.insert(b);
        }
        s
    };
    let mut k = 1;
    loop {
        caps.check_deadline()?;
        let mut next = AdditiveSpan::from_parts(ring, &i.members, &i.basis);
        for &a in &p.basis {
            for &b in current.basis() {
                next.insert(ring.mul(a, b));
            }
        }
        k += 1;
        if next.len() == i.size {
            return Ok(Some(k));
        }
        if next.len() == current.len() {
            return Ok(None);
        }
        current = next;
    }
}

/// Least k with I^k = 0.
pub fn nilpotency_index(ring: &FiniteRing, i: &Ideal, caps: &Caps) -> Result<Option<usize>> {
    nilpotency_index_mod(ring, i, &zero_ideal(ring), caps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct Annihilator {
    pub members: ElementSet,
    pub two_sided: bool,
    /// Present when the annihilator is a two-sided ideal.
    pub ideal: Option<Ideal>,
}

/// ℓ(X) = {a : aX = 0} or r(X) = {a : Xa = 0}.
pub fn annihilator(ring: &FiniteRing, xs: &[Elem], side: Side, caps: &Caps) -> Result<Annihilator> {
    ideal_ring_cap(ring, caps)?;
    let flags: Vec<bool> = (0..ring.size() as Elem)
        .into_par_iter()
        .map(|a| {
            xs.iter().all(|&x| match side {
                Side::Left => ring.mul(a, x) == 0,
                Side::Right => ring.mul(x, a) == 0,
            })
        })
        .collect();
    let members = ElementSet::from_iter_in(
        ring.size(),
        flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(a, _)| a as Elem),
    );
    let ideal = ideal_from_members(ring, &members, caps).ok();
    Ok(Annihilator {
        two_sided: ideal.is_some(),
        members,
        ideal,
    })
}

/// Annihilator of an ideal; checking the additive basis suffices.
pub fn ideal_annihilator(ring: &FiniteRing, i: &Ideal, side: Side, caps: &Caps) -> Result<Annihilator> {
    i.belongs_to(ring)?;
    annihilator(ring, &i.basis, side, caps)
}

/// One distinct principal ideal with its canonical generators.
#[derive(Debug, Clone)]
pub struct PrincipalIdeal {
    pub ideal: Ideal,
    /// Least element generating this ideal.
    pub least: Elem,
    /// Least idempotent generator if any, else `least`. Used for witnesses.
    pub rep: Elem,
}

/// Memoized map x ↦ ⟨x⟩ over a whole ring.
#[derive(Debug)]
pub struct PrincipalTable {
    of_elem: Vec<u32>,
    ideals: Vec<PrincipalIdeal>,
}

impl PrincipalTable {
    /// Distinct principal ideals ordered by least generator.
    pub fn ideals(&self) -> &[PrincipalIdeal] {
        &self.ideals
    }

    pub fn class_of(&self, x: Elem) -> &PrincipalIdeal {
        &self.ideals[self.of_elem[x as usize] as usize]
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }
}

/// All principal ideals, computed once per ring.
pub fn principal_table(ring: &FiniteRing, caps: &Caps) -> Result<Arc<PrincipalTable>> {
    caps.require("ring (principal-pair engine)", ring.size(), caps.max_pair_size)?;
    ideal_ring_cap(ring, caps)?;
    ring.principal_memo()
        .get_or_try_init(|| build_principal_table(ring, caps).map(Arc::new))
        .cloned()
}

fn build_principal_table(ring: &FiniteRing, caps: &Caps) -> Result<PrincipalTable> {
    let n = ring.size();
    let mut of_elem = vec![u32::MAX; n];
    let mut ideals: Vec<PrincipalIdeal> = Vec::new();
    let mut index: HashMap<ElementSet, u32> = HashMap::new();
    // ⟨uxv⟩ = ⟨x⟩ for units u, v, so each closure is shared by the orbit
    // of x under the cheap units. Elements are visited in increasing order,
    // which keeps `least` the least generator of its ideal.
    let units = ring.unit_monomials();
    const BATCH: usize = 256;
    let mut slot_of = vec![u32::MAX; n];
    let mut batch: Vec<Elem> = Vec::new();
    let mut orbits: Vec<Vec<Elem>> = Vec::new();
    let mut x = 0usize;
    while x < n || !batch.is_empty() {
        if x < n && batch.len() < BATCH {
            if of_elem[x] == u32::MAX && slot_of[x] == u32::MAX {
                let slot = batch.len() as u32;
                let mut orbit = vec![x as Elem];
                slot_of[x] = slot;
                for &u in &units {
                    let ux = ring.mul(u, x as Elem);
                    for &v in &units {
                        let y = ring.mul(ux, v);
                        if slot_of[y as usize] == u32::MAX && of_elem[y as usize] == u32::MAX {
                            slot_of[y as usize] = slot;
                            orbit.push(y);
                        }
                    }
                }
                batch.push(x as Elem);
                orbits.push(orbit);
            }
            x += 1;
            continue;
        }
        caps.check_deadline()?;
        let closures: Vec<Ideal> = batch
            .par_iter()
            .map(|&g| ideal_closure(ring, &[g], caps))
            .collect::<Result<_>>()?;
        for ((g, id), orbit) in batch.drain(..).zip(closures).zip(orbits.drain(..)) {
            let k = *index.entry(id.members.clone()).or_insert_with(|| {
                ideals.push(PrincipalIdeal {
                    ideal: id,
                    least: g,
                    rep: g,
                });
                (ideals.len() - 1) as u32
            });
            for y in orbit {
                of_elem[y as usize] = k;
                slot_of[y as usize] = u32::MAX;
            }
        }
    }
    // Prefer idempotent generators as canonical representatives.
    let mut has_idem = vec![false; ideals.len()];
    for x in 0..n as Elem {
        let k = of_elem[x as usize] as usize;
        if !has_idem[k] && ring.is_idempotent(x) {
            has_idem[k] = true;
            ideals[k].rep = x;
        }
    }
    Ok(PrincipalTable { of_elem, ideals })
}

pub fn principal_ideal(ring: &FiniteRing, x: Elem, caps: &Caps) -> Result<Ideal> {
    if let Some(t) = ring.principal_memo().get() {
        return Ok(t.class_of(x).ideal.clone());
    }
    ideal_closure(ring, &[x], caps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Prime,
    Semiprime,
    Nilary,
    PNilary,
    RightPrimary,
    LeftPrimary,
    Essential,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Prime,
        Property::Semiprime,
        Property::Nilary,
        Property::PNilary,
        Property::RightPrimary,
        Property::LeftPrimary,
        Property::Essential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Prime => "prime",
            Property::Semiprime => "semiprime",
            Property::Nilary => "nilary",
            Property::PNilary => "p-nilary",
            Property::RightPrimary => "right-primary",
            Property::LeftPrimary => "left-primary",
            Property::Essential => "essential",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-");
        Property::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| Error::InvalidDescriptor(format!("unknown property `{s}`")))
    }
}

/// Counterexample to an ideal property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Elements a, b ∉ I with aRb ⊆ I (or a = b for semiprime).
    ElementPair { a: Elem, b: Elem },
    /// Principal ideals ⟨x⟩, ⟨y⟩ with ⟨x⟩⟨y⟩ ⊆ I violating the property.
    IdealPair { x: Elem, y: Elem },
    /// Nonzero x with ⟨x⟩ ∩ I = 0.
    Element { x: Elem },
}

impl Witness {
    pub fn elements(&self) -> Vec<Elem> {
        match *self {
            Witness::ElementPair { a, b } => vec![a, b],
            Witness::IdealPair { x, y } => vec![x, y],
            Witness::Element { x } => vec![x],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

fn nil_flags(ring: &FiniteRing, table: &PrincipalTable, i: &Ideal, caps: &Caps) -> Result<Vec<bool>> {
    table
        .ideals()
        .par_iter()
        .map(|p| Ok(nilpotency_index_mod(ring, &p.ideal, i, caps)?.is_some()))
        .collect()
}

/// Decides a property of I by the principal-pair reduction. Witnesses are
/// the least failing pair in the order of least generators.
pub fn check_ideal_property(ring: &FiniteRing, i: &Ideal, prop: Property, caps: &Caps) -> Result<PropertyOutcome> {
    i.belongs_to(ring)?;
    let table = principal_table(ring, caps)?;
    let ps = table.ideals();
    let mut notes = Vec::new();
    if i.is_whole() {
        notes.push("I = R: the property holds vacuously".to_string());
    }
    if matches!(prop, Property::Nilary | Property::PNilary) {
        notes.push("nilary and p-nilary coincide on finite rings".to_string());
    }
    let outside: Vec<bool> = ps.iter().map(|p| !p.ideal.is_subset(i)).collect();
    let witness = match prop {
        Property::Prime => (0..ps.len()).into_par_iter().find_map_first(|a| {
            if !outside[a] {
                return None;
            }
            (0..ps.len())
                .find(|&b| outside[b] && product_within(ring, &ps[a].ideal, &ps[b].ideal, i))
                .map(|b| Witness::ElementPair {
                    a: ps[a].least,
                    b: ps[b].least,
                })
        }),
        Property::Semiprime => (0..ps.len()).find_map(|a| {
            (outside[a] && product_within(ring, &ps[a].ideal, &ps[a].ideal, i)).then(|| {
                Witness::ElementPair {
                    a: ps[a].least,
                    b: ps[a].least,
                }
            })
        }),
        Property::Essential => ps.iter().find_map(|p| {
            let meets = p.ideal.members.intersection(&i.members).count() > 1;
            (!p.ideal.is_zero() && !meets).then_some(Witness::Element { x: p.least })
        }),
        Property::Nilary | Property::PNilary | Property::RightPrimary | Property::LeftPrimary => {
            let nil = nil_flags(ring, &table, i, caps)?;
            let fails = |a: usize, b: usize| match prop {
                Property::RightPrimary => outside[a] && !nil[b],
                Property::LeftPrimary => outside[b] && !nil[a],
                _ => !nil[a] && !nil[b],
            };
            (0..ps.len()).into_par_iter().find_map_first(|a| {
                (0..ps.len())
                    .find(|&b| fails(a, b) && product_within(ring, &ps[a].ideal, &ps[b].ideal, i))
                    .map(|b| Witness::IdealPair {
                        x: ps[a].rep,
                        y: ps[b].rep,
                    })
            })
        }
    };
    Ok(PropertyOutcome {
        property: prop,
        holds: witness.is_none(),
        witness,
        notes,
    })
}

/// √I: the sum of all ideals nilpotent modulo I.
pub fn pseudo_radical(ring: &FiniteRing, i: &Ideal, caps: &Caps) -> Result<Ideal> {
    i.belongs_to(ring)?;
    let table = principal_table(ring, caps)?;
    let nil = nil_flags(ring, &table, i, caps)?;
    let mut span = AdditiveSpan::from_parts(ring, &i.members, &i.basis);
    let mut gens = i.generators.clone();
    for (p, &is_nil) in table.ideals().iter().zip(&nil) {
        if is_nil && !p.ideal.is_subset(i) {
            gens.push(p.least);
            for &b in p.ideal.basis() {
                span.insert(b);
            }
        }
    }
    Ok(Ideal::from_span(ring, span, gens))
}

/// P(R), computed as √0 (the sum of the nilpotent ideals).
pub fn prime_radical(ring: &FiniteRing, caps: &Caps) -> Result<Ideal> {
    pseudo_radical(ring, &zero_ideal(ring), caps)
}

/// J(R) = {x : 1 − rx is a unit for every r}, by a unit scan.
pub fn jacobson_radical(ring: &FiniteRing, caps: &Caps) -> Result<Ideal> {
    caps.require("ring (Jacobson unit scan)", ring.size(), caps.max_pair_size)?;
    let units = ring.units();
    let one = ring.one();
    let flags: Vec<bool> = (0..ring.size() as Elem)
        .into_par_iter()
        .map(|x| ring.elements().all(|r| units.contains(ring.sub(one, ring.mul(r, x)))))
        .collect();
    let members = ElementSet::from_iter_in(
        ring.size(),
        flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(x, _)| x as Elem),
    );
    ideal_from_members(ring, &members, caps)
}

/// R/I. The quotient's element k is the coset whose least member is the k-th
/// smallest coset minimum.
pub fn quotient_ring(ring: &Arc<FiniteRing>, i: &Ideal, caps: &Caps) -> Result<Arc<FiniteRing>> {
    i.belongs_to(ring)?;
    FiniteRing::new_quotient(ring, &i.members, i.generators.clone(), caps)
}

/// Every ideal of a small ring: the closure of the principal ideals under sums.
#[derive(Debug)]
pub struct IdealLattice {
    ideals: Vec<Ideal>,
}

pub fn enumerate_all_ideals(ring: &FiniteRing, caps: &Caps) -> Result<IdealLattice> {
    caps.require("ring (ideal oracle)", ring.size(), caps.max_oracle_size)?;
    let table = principal_table(ring, caps)?;
    let principals: Vec<&Ideal> = table.ideals().iter().map(|p| &p.ideal).collect();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut all = Vec::new();
    let mut queue = VecDeque::new();
    for p in &principals {
        if seen.insert(p.members.clone()) {
            all.push((*p).clone());
            queue.push_back(all.len() - 1);
        }
    }
    while let Some(k) = queue.pop_front() {
        caps.check_deadline()?;
        for p in &principals {
            if p.is_subset(&all[k]) {
                continue;
            }
            let s = sum(ring, &all[k], p)?;
            if seen.insert(s.members.clone()) {
                if all.len() >= caps.max_ideal_count {
                    return Err(Error::CapExceeded {
                        what: "ideal lattice",
                        size: all.len() + 1,
                        cap: caps.max_ideal_count,
                    });
                }
                all.push(s);
                queue.push_back(all.len() - 1);
            }
        }
    }
    all.sort_by(|a, b| (a.size, &a.members).cmp(&(b.size, &b.members)));
    Ok(IdealLattice { ideals: all })
}

impl IdealLattice {
    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Decides the property of I by quantifying over every pair of ideals.
    /// Returns the first failing pair of lattice indices, if any.
    pub fn oracle(&self, ring: &FiniteRing, i: &Ideal, prop: Property, caps: &Caps) -> Result<Option<(usize, usize)>> {
        i.belongs_to(ring)?;
        let all = &self.ideals;
        let inside: Vec<bool> = all.iter().map(|v| v.is_subset(i)).collect();
        if prop == Property::Essential {
            return Ok(all
                .iter()
                .position(|w| !w.is_zero() && w.members.intersection(&i.members).count() == 1)
                .map(|k| (k, k)));
        }
        let nil: Vec<bool> = if matches!(prop, Property::Prime | Property::Semiprime) {
            vec![false; all.len()]
        } else {
            all.par_iter()
                .map(|v| Ok(nilpotency_index_mod(ring, v, i, caps)?.is_some()))
                .collect::<Result<_>>()?
        };
        let found = (0..all.len()).into_par_iter().find_map_first(|a| {
            let range: Vec<usize> = if prop == Property::Semiprime {
                vec![a]
            } else {
                (0..all.len()).collect()
            };
            range.into_iter().find_map(|b| {
                if !product_within(ring, &all[a], &all[b], i) {
                    return None;
                }
                let ok = match prop {
                    Property::Prime | Property::Semiprime => inside[a] || inside[b],
                    Property::Nilary | Property::PNilary => nil[a] || nil[b],
                    Property::RightPrimary => inside[a] || nil[b],
                    Property::LeftPrimary => inside[b] || nil[a],
                    Property::Essential => unreachable!(),
                };
                (!ok).then_some((a, b))
            })
        });
        Ok(found)
    }
}

/// The all-ideals decision of a property, for validating the principal-pair engine.
pub fn exhaustive_property_oracle(ring: &FiniteRing, i: &Ideal, prop: Property, caps: &Caps) -> Result<bool> {
    let lattice = enumerate_all_ideals(ring, caps)?;
    Ok(lattice.oracle(ring, i, prop, caps)?.is_none())
}
