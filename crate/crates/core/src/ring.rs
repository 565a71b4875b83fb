//! Finite unital rings with dense element ids.
//!
//! Element id 0 is zero. Small rings carry full add/mul tables; larger ones
//! compute operations on demand from their construction (residues, pairs,
//! coefficient vectors or coset representatives). Group-ring element ids
//! are the coefficient vectors read as base-|A| numerals, coefficient of the
//! identity most significant, so ids follow lexicographic coefficient order.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use once_cell::sync::OnceCell;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::{Caps, RING_ID_LIMIT, TABLE_CAP};
use crate::elements::{Elem, ElementSet};
use crate::error::{Error, Result};
use crate::expr::RingExpr;
use crate::group::{make_group, GroupTable};
use crate::ideal::PrincipalTable;

/// Group rings never exceed this many coefficients: |A| >= 2 and the id
/// space is capped at 2^20.
const MAX_COEFFS: usize = 20;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// How a ring was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Zmod { n: u64 },
    Product { left: Box<Provenance>, right: Box<Provenance> },
    GroupRing { base: Box<Provenance>, group: String },
    Quotient { parent: Box<Provenance>, ideal_generators: Vec<Elem> },
    Table { name: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Zmod { n } => write!(f, "Z{n}"),
            Provenance::Product { left, right } => write!(f, "({left}) x ({right})"),
            Provenance::GroupRing { base, group } => write!(f, "({base})[{group}]"),
            Provenance::Quotient {
                parent,
                ideal_generators,
            } => write!(f, "({parent})/<{ideal_generators:?}>"),
            Provenance::Table { name } => write!(f, "{name}"),
        }
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
}

#[derive(Debug)]
struct GroupRingData {
    base: Arc<FiniteRing>,
    group: Arc<GroupTable>,
    radix: usize,
    /// place[i] = radix^(k-1-i)
    place: Vec<usize>,
}

#[derive(Debug)]
enum Repr {
    Zmod(u64),
    Product {
        left: Arc<FiniteRing>,
        right: Arc<FiniteRing>,
    },
    GroupRing(GroupRingData),
    Quotient {
        parent: Arc<FiniteRing>,
        reps: Vec<Elem>,
        proj: Vec<Elem>,
    },
    Table {
        labels: Vec<String>,
    },
}

/// Lazily computed per-ring facts shared by every consumer of the ring.
#[derive(Debug, Default)]
pub(crate) struct RingMemo {
    pub(crate) principal: OnceCell<Arc<PrincipalTable>>,
    units: OnceCell<ElementSet>,
    commutative: OnceCell<bool>,
}

#[derive(Debug)]
pub struct FiniteRing {
    uid: u64,
    size: usize,
    one: Elem,
    characteristic: u64,
    provenance: Provenance,
    repr: Repr,
    tables: Option<Tables>,
    additive_gens: Vec<Elem>,
    pub(crate) memo: RingMemo,
}

/// A group ring together with its coefficient ring and group.
#[derive(Debug, Clone)]
pub struct GroupRingContext {
    pub base: Arc<FiniteRing>,
    pub group: Arc<GroupTable>,
    pub ring: Arc<FiniteRing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub law: &'static str,
    pub triple: (Elem, Elem, Elem),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub exhaustive: bool,
    pub triples_checked: usize,
    pub failure: Option<AxiomFailure>,
}

/// Builds a ring from a descriptor, validating it.
pub fn make_ring(expr: &RingExpr, caps: &Caps) -> Result<Arc<FiniteRing>> {
    let limit = caps.max_ring_size.min(RING_ID_LIMIT);
    caps.require("ring", expr.size(), limit)?;
    match expr {
        RingExpr::ZMod(n) => {
            if *n < 2 {
                return Err(Error::InvalidDescriptor("modulus must be >= 2".into()));
            }
            FiniteRing::finish(Repr::Zmod(*n), *n as usize, Provenance::Zmod { n: *n }, caps)
        }
        RingExpr::Product(a, b) => {
            let left = make_ring(a, caps)?;
            let right = make_ring(b, caps)?;
            product_ring(left, right, caps)
        }
        RingExpr::GroupRing(a, g) => {
            let base = make_ring(a, caps)?;
            let group = Arc::new(make_group(g, caps)?);
            group_ring(base, group, caps)
        }
    }
}

/// A[G] over an already-built coefficient ring and group.
pub fn group_ring(
    base: Arc<FiniteRing>,
    group: Arc<GroupTable>,
    caps: &Caps,
) -> Result<Arc<FiniteRing>> {
    let k = group.order();
    let radix = base.size();
    let size = checked_pow(radix, k).unwrap_or(usize::MAX);
    caps.require("ring", size, caps.max_ring_size.min(RING_ID_LIMIT))?;
    caps.require("group", k, caps.max_group_order)?;
    let place = (0..k).map(|i| radix.pow((k - 1 - i) as u32)).collect();
    let prov = Provenance::GroupRing {
        base: Box::new(base.provenance.clone()),
        group: group.name().to_string(),
    };
    FiniteRing::finish(
        Repr::GroupRing(GroupRingData {
            base,
            group,
            radix,
            place,
        }),
        size,
        prov,
        caps,
    )
}

pub fn product_ring(
    left: Arc<FiniteRing>,
    right: Arc<FiniteRing>,
    caps: &Caps,
) -> Result<Arc<FiniteRing>> {
    let size = left.size().saturating_mul(right.size());
    caps.require("ring", size, caps.max_ring_size.min(RING_ID_LIMIT))?;
    let prov = Provenance::Product {
        left: Box::new(left.provenance.clone()),
        right: Box::new(right.provenance.clone()),
    };
    FiniteRing::finish(Repr::Product { left, right }, size, prov, caps)
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

impl FiniteRing {
    fn finish(repr: Repr, size: usize, provenance: Provenance, caps: &Caps) -> Result<Arc<FiniteRing>> {
        let mut ring = FiniteRing {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            size,
            one: 0,
            characteristic: 0,
            provenance,
            repr,
            tables: None,
            additive_gens: Vec::new(),
            memo: RingMemo::default(),
        };
        ring.one = ring.compute_one();
        if ring.one == 0 {
            return Err(Error::InvalidDescriptor("ring has 1 = 0".into()));
        }
        if size <= TABLE_CAP {
            ring.tables = Some(ring.build_tables());
        }
        ring.characteristic = ring.additive_order(ring.one) as u64;
        ring.additive_gens = ring.compute_additive_gens();
        let report = ring.validate_axioms(caps);
        if let Some(f) = report.failure {
            return Err(Error::InvalidDescriptor(format!(
                "ring axioms fail: {} at {:?}",
                f.law, f.triple
            )));
        }
        Ok(Arc::new(ring))
    }

    /// A ring given by raw tables (id 0 must be zero). Validated like any other.
    pub fn from_tables(
        name: &str,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        one: Elem,
        labels: Vec<String>,
    ) -> Result<FiniteRing> {
        let n = labels.len();
        if add.len() != n * n || mul.len() != n * n || one as usize >= n || n == 0 {
            return Err(Error::InvalidDescriptor("malformed ring tables".into()));
        }
        if add.iter().chain(&mul).any(|&x| x as usize >= n) {
            return Err(Error::InvalidDescriptor("table entry out of range".into()));
        }
        let neg = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| add[x * n + y] == 0)
                    .map(|y| y as Elem)
                    .unwrap_or(0)
            })
            .collect();
        let mut ring = FiniteRing {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            size: n,
            one,
            characteristic: 0,
            provenance: Provenance::Table { name: name.into() },
            repr: Repr::Table { labels },
            tables: Some(Tables { add, mul, neg }),
            additive_gens: Vec::new(),
            memo: RingMemo::default(),
        };
        ring.characteristic = ring.additive_order(one) as u64;
        ring.additive_gens = ring.compute_additive_gens();
        Ok(ring)
    }

    /// R/I for an additive subgroup `members` that the caller has verified to
    /// be a two-sided ideal. Cosets are numbered by their least member.
    pub(crate) fn new_quotient(
        parent: &Arc<FiniteRing>,
        members: &ElementSet,
        generators: Vec<Elem>,
        caps: &Caps,
    ) -> Result<Arc<FiniteRing>> {
        let n = parent.size;
        let ideal: Vec<Elem> = members.iter().collect();
        if ideal.is_empty() || n % ideal.len() != 0 {
            return Err(Error::InvalidIdeal("not an additive subgroup".into()));
        }
        if ideal.len() == n {
            return Err(Error::InvalidIdeal("quotient by the whole ring has 1 = 0".into()));
        }
        let mut proj = vec![Elem::MAX; n];
        let mut reps = Vec::with_capacity(n / ideal.len());
        for x in 0..n as Elem {
            if proj[x as usize] != Elem::MAX {
                continue;
            }
            let c = reps.len() as Elem;
            reps.push(x);
            for &i in &ideal {
                proj[parent.add(x, i) as usize] = c;
            }
        }
        let size = reps.len();
        let prov = Provenance::Quotient {
            parent: Box::new(parent.provenance.clone()),
            ideal_generators: generators,
        };
        Self::finish(
            Repr::Quotient {
                parent: parent.clone(),
                reps,
                proj,
            },
            size,
            prov,
            caps,
        )
    }

    fn compute_one(&self) -> Elem {
        match &self.repr {
            Repr::Zmod(_) => 1,
            Repr::Product { left, right } => self.pair(left.one, right.one),
            Repr::GroupRing(d) => {
                let mut v = [0; MAX_COEFFS];
                v[0] = d.base.one;
                encode(d, &v)
            }
            Repr::Quotient { parent, proj, .. } => proj[parent.one as usize],
            Repr::Table { .. } => self.one,
        }
    }

    fn build_tables(&self) -> Tables {
        let n = self.size;
        let rows: Vec<(Vec<Elem>, Vec<Elem>)> = (0..n as Elem)
            .into_par_iter()
            .map(|x| {
                (
                    (0..n as Elem).map(|y| self.raw_add(x, y)).collect(),
                    (0..n as Elem).map(|y| self.raw_mul(x, y)).collect(),
                )
            })
            .collect();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for (a, m) in rows {
            add.extend(a);
            mul.extend(m);
        }
        let neg = (0..n as Elem).map(|x| self.raw_neg(x)).collect();
        Tables { add, mul, neg }
    }

    #[inline]
    fn pair(&self, a: Elem, b: Elem) -> Elem {
        match &self.repr {
            Repr::Product { right, .. } => a * right.size as Elem + b,
            _ => unreachable!(),
        }
    }

    fn raw_add(&self, x: Elem, y: Elem) -> Elem {
        match &self.repr {
            Repr::Zmod(n) => ((x as u64 + y as u64) % n) as Elem,
            Repr::Product { left, right } => {
                let m = right.size as Elem;
                left.add(x / m, y / m) * m + right.add(x % m, y % m)
            }
            Repr::GroupRing(d) => {
                let k = d.group.order();
                let (mut a, mut b) = ([0; MAX_COEFFS], [0; MAX_COEFFS]);
                decode(d, x, &mut a);
                decode(d, y, &mut b);
                for i in 0..k {
                    a[i] = d.base.add(a[i], b[i]);
                }
                encode(d, &a)
            }
            Repr::Quotient { parent, reps, proj } => {
                proj[parent.add(reps[x as usize], reps[y as usize]) as usize]
            }
            Repr::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn raw_mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.repr {
            Repr::Zmod(n) => ((x as u64 * y as u64) % n) as Elem,
            Repr::Product { left, right } => {
                let m = right.size as Elem;
                left.mul(x / m, y / m) * m + right.mul(x % m, y % m)
            }
            Repr::GroupRing(d) => {
                let k = d.group.order();
                let (mut a, mut b, mut c) = ([0; MAX_COEFFS], [0; MAX_COEFFS], [0; MAX_COEFFS]);
                decode(d, x, &mut a);
                decode(d, y, &mut b);
                for g in 0..k {
                    if a[g] == 0 {
                        continue;
                    }
                    for h in 0..k {
                        if b[h] == 0 {
                            continue;
                        }
                        let t = d.group.mul(g as Elem, h as Elem) as usize;
                        c[t] = d.base.add(c[t], d.base.mul(a[g], b[h]));
                    }
                }
                encode(d, &c)
            }
            Repr::Quotient { parent, reps, proj } => {
                proj[parent.mul(reps[x as usize], reps[y as usize]) as usize]
            }
            Repr::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn raw_neg(&self, x: Elem) -> Elem {
        match &self.repr {
            Repr::Zmod(n) => ((n - x as u64) % n) as Elem,
            Repr::Product { left, right } => {
                let m = right.size as Elem;
                left.neg(x / m) * m + right.neg(x % m)
            }
            Repr::GroupRing(d) => {
                let mut a = [0; MAX_COEFFS];
                decode(d, x, &mut a);
                for c in a.iter_mut().take(d.group.order()) {
                    *c = d.base.neg(*c);
                }
                encode(d, &a)
            }
            Repr::Quotient { parent, reps, proj } => {
                proj[parent.neg(reps[x as usize]) as usize]
            }
            Repr::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn compute_additive_gens(&self) -> Vec<Elem> {
        let mut gens = match &self.repr {
            Repr::Zmod(_) => vec![1],
            Repr::Product { left, right } => {
                let mut g: Vec<Elem> = left.additive_gens.iter().map(|&a| self.pair(a, 0)).collect();
                g.extend(right.additive_gens.iter().map(|&b| self.pair(0, b)));
                g
            }
            Repr::GroupRing(d) => {
                let mut g = Vec::new();
                for e in 0..d.group.order() {
                    for &a in &d.base.additive_gens {
                        let mut v = [0; MAX_COEFFS];
                        v[e] = a;
                        g.push(encode(d, &v));
                    }
                }
                g
            }
            Repr::Quotient { parent, proj, .. } => parent
                .additive_gens
                .iter()
                .map(|&a| proj[a as usize])
                .collect(),
            Repr::Table { .. } => self.greedy_additive_gens(),
        };
        gens.retain(|&g| g != 0);
        let mut seen = std::collections::HashSet::new();
        gens.retain(|g| seen.insert(*g));
        gens
    }

    fn greedy_additive_gens(&self) -> Vec<Elem> {
        let mut span = crate::span::AdditiveSpan::new(self);
        let mut gens = Vec::new();
        for x in 0..self.size as Elem {
            if span.insert(x) {
                gens.push(x);
            }
        }
        gens
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Elements whose additive span is the whole ring.
    pub fn additive_gens(&self) -> &[Elem] {
        &self.additive_gens
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    pub fn check_elem(&self, x: Elem) -> Result<Elem> {
        if (x as usize) < self.size {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange(x as usize))
        }
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[x as usize * self.size + y as usize],
            None => self.raw_add(x, y),
        }
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[x as usize * self.size + y as usize],
            None => self.raw_mul(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[x as usize],
            None => self.raw_neg(x),
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// n·x for a non-negative integer n.
    pub fn scalar(&self, n: u64, x: Elem) -> Elem {
        let mut acc = 0;
        let mut base = x;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// The image of the integer n in the ring, n·1.
    pub fn integer(&self, n: u64) -> Elem {
        self.scalar(n % self.characteristic, self.one)
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    pub fn additive_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    /// Walks x, x², x³, … with a tortoise/hare pair until the sequence cycles.
    /// Reports whether 1 or 0 was reached and at which exponent.
    fn power_walk(&self, x: Elem) -> (Option<usize>, Option<usize>) {
        let mut slow = x;
        let mut fast = x;
        let (mut hit_one, mut hit_zero) = (None, None);
        let mut k = 1;
        let note = |v: Elem, k: usize, one: &mut Option<usize>, zero: &mut Option<usize>| {
            if v == self.one && one.is_none() {
                *one = Some(k);
            }
            if v == 0 && zero.is_none() {
                *zero = Some(k);
            }
        };
        note(x, 1, &mut hit_one, &mut hit_zero);
        loop {
            slow = self.mul(slow, x);
            fast = self.mul(fast, x);
            k += 1;
            note(fast, k, &mut hit_one, &mut hit_zero);
            fast = self.mul(fast, x);
            k += 1;
            note(fast, k, &mut hit_one, &mut hit_zero);
            if hit_one.is_some() || hit_zero.is_some() || slow == fast {
                return (hit_one, hit_zero);
            }
        }
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        if let Some(u) = self.memo.units.get() {
            return u.contains(x);
        }
        self.power_walk(x).0.is_some()
    }

    /// The group of units as a set (computed once per ring).
    pub fn units(&self) -> &ElementSet {
        self.memo.units.get_or_init(|| {
            let flags: Vec<bool> = (0..self.size as Elem)
                .into_par_iter()
                .map(|x| self.power_walk(x).0.is_some())
                .collect();
            ElementSet::from_iter_in(
                self.size,
                flags
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| u)
                    .map(|(i, _)| i as Elem),
            )
        })
    }

    /// Least k with x^k = 0, if x is nilpotent.
    pub fn nilpotency_index(&self, x: Elem) -> Option<usize> {
        if x == 0 {
            return Some(1);
        }
        self.power_walk(x).1
    }

    /// Whether n·1 is nilpotent.
    pub fn integer_is_nilpotent(&self, n: u64) -> bool {
        self.nilpotency_index(self.integer(n)).is_some()
    }

    pub fn is_commutative(&self) -> bool {
        *self.memo.commutative.get_or_init(|| {
            let g = &self.additive_gens;
            g.iter()
                .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
        })
    }

    pub fn is_field(&self) -> bool {
        self.is_commutative() && self.elements().skip(1).all(|x| self.is_unit(x))
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.repr {
            Repr::Zmod(_) => x.to_string(),
            Repr::Product { left, right } => {
                let m = right.size as Elem;
                format!("({},{})", left.label(x / m), right.label(x % m))
            }
            Repr::GroupRing(d) => {
                let mut v = [0; MAX_COEFFS];
                decode(d, x, &mut v);
                let terms: Vec<String> = (0..d.group.order())
                    .filter(|&g| v[g] != 0)
                    .map(|g| {
                        let c = d.base.label(v[g]);
                        let c = if c.contains('+') { format!("({c})") } else { c };
                        match (g, v[g] == d.base.one) {
                            (0, _) => c,
                            (_, true) => d.group.label(g as Elem).to_string(),
                            _ => format!("{c}{}", d.group.label(g as Elem)),
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            Repr::Quotient { parent, reps, .. } => format!("[{}]", parent.label(reps[x as usize])),
            Repr::Table { labels } => labels[x as usize].clone(),
        }
    }

    /// Finds an element by exact label.
    pub fn find_label(&self, text: &str) -> Option<Elem> {
        self.elements().find(|&x| self.label(x) == text)
    }

    pub fn group_ring_context(self: &Arc<Self>) -> Option<GroupRingContext> {
        match &self.repr {
            Repr::GroupRing(d) => Some(GroupRingContext {
                base: d.base.clone(),
                group: d.group.clone(),
                ring: self.clone(),
            }),
            _ => None,
        }
    }

    /// For a quotient ring: the parent, coset representatives and projection.
    pub fn quotient_parts(&self) -> Option<(&Arc<FiniteRing>, &[Elem], &[Elem])> {
        match &self.repr {
            Repr::Quotient { parent, reps, proj } => Some((parent, reps, proj)),
            _ => None,
        }
    }

    fn axiom_at(&self, a: Elem, b: Elem, c: Elem) -> Option<&'static str> {
        let (ab, bc) = (self.mul(a, b), self.mul(b, c));
        if self.mul(a, self.add(b, c)) != self.add(ab, self.mul(a, c)) {
            return Some("left distributivity");
        }
        if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), bc) {
            return Some("right distributivity");
        }
        if self.mul(ab, c) != self.mul(a, bc) {
            return Some("multiplicative associativity");
        }
        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
            return Some("additive associativity");
        }
        None
    }

    fn axiom_at_pair(&self, a: Elem, b: Elem) -> Option<&'static str> {
        (self.add(a, b) != self.add(b, a)).then_some("additive commutativity")
    }

    fn axiom_at_single(&self, a: Elem) -> Option<&'static str> {
        if self.add(a, 0) != a || self.add(0, a) != a {
            return Some("additive identity");
        }
        if self.add(a, self.neg(a)) != 0 {
            return Some("additive inverse");
        }
        if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
            return Some("multiplicative identity");
        }
        None
    }

    /// Checks every ring axiom; exhaustive on all triples up to
    /// `caps.exhaustive_validation` elements, seeded random triples above.
    pub fn validate_axioms(&self, caps: &Caps) -> AxiomReport {
        let n = self.size as Elem;
        let fail = |law, triple, exhaustive, checked| AxiomReport {
            passed: false,
            exhaustive,
            triples_checked: checked,
            failure: Some(AxiomFailure { law, triple }),
        };
        if self.one == 0 {
            return fail("one differs from zero", (0, 0, 0), true, 0);
        }
        for a in 0..n {
            if let Some(law) = self.axiom_at_single(a) {
                return fail(law, (a, a, a), true, 0);
            }
        }
        let exhaustive = self.size <= caps.exhaustive_validation;
        if exhaustive {
            for a in 0..n {
                for b in 0..n {
                    if let Some(law) = self.axiom_at_pair(a, b) {
                        return fail(law, (a, b, b), true, 0);
                    }
                }
            }
            let first = (0..n).into_par_iter().find_map_first(|a| {
                for b in 0..n {
                    for c in 0..n {
                        if let Some(law) = self.axiom_at(a, b, c) {
                            return Some((law, (a, b, c)));
                        }
                    }
                }
                None
            });
            let checked = self.size.pow(3);
            return match first {
                Some((law, t)) => fail(law, t, true, checked),
                None => AxiomReport {
                    passed: true,
                    exhaustive: true,
                    triples_checked: checked,
                    failure: None,
                },
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
        for i in 0..caps.validation_samples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if let Some(law) = self.axiom_at_pair(a, b).or_else(|| self.axiom_at(a, b, c)) {
                return fail(law, (a, b, c), false, i + 1);
            }
        }
        AxiomReport {
            passed: true,
            exhaustive: false,
            triples_checked: caps.validation_samples,
            failure: None,
        }
    }

    /// Canonical JSON dump: tables for small rings, an on-demand marker otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        let tables = match &self.tables {
            Some(t) => serde_json::json!({ "add": t.add, "mul": t.mul }),
            None => serde_json::json!("on-demand"),
        };
        serde_json::json!({
            "size": self.size,
            "one": self.one,
            "characteristic": self.characteristic,
            "provenance": self.provenance,
            "tables": tables,
        })
    }

    pub(crate) fn principal_memo(&self) -> &OnceCell<Arc<PrincipalTable>> {
        &self.memo.principal
    }

    /// Units that are cheap to list: u·g for u a unit of the coefficient
    /// ring and g in G when this is a group ring, otherwise just 1.
    pub fn unit_monomials(&self) -> Vec<Elem> {
        match &self.repr {
            Repr::GroupRing(d) if d.base.size() <= TABLE_CAP => {
                let units: Vec<Elem> = d.base.units().iter().collect();
                let mut out = Vec::with_capacity(units.len() * d.group.order());
                let mut v = vec![0; d.group.order()];
                for g in 0..d.group.order() {
                    for &u in &units {
                        v[g] = u;
                        out.push(encode(d, &v));
                    }
                    v[g] = 0;
                }
                out
            }
            _ => vec![self.one],
        }
    }
}

fn decode(d: &GroupRingData, x: Elem, out: &mut [Elem; MAX_COEFFS]) {
    let mut x = x as usize;
    for i in (0..d.place.len()).rev() {
        out[i] = (x % d.radix) as Elem;
        x /= d.radix;
    }
}

fn encode(d: &GroupRingData, v: &[Elem]) -> Elem {
    d.place
        .iter()
        .zip(v)
        .map(|(p, &c)| p * c as usize)
        .sum::<usize>() as Elem
}

impl GroupRingContext {
    fn data(&self) -> &GroupRingData {
        match &self.ring.repr {
            Repr::GroupRing(d) => d,
            _ => unreachable!("context always wraps a group ring"),
        }
    }

    /// Coefficient vector of x, indexed by group element id.
    pub fn decode(&self, x: Elem) -> Vec<Elem> {
        let mut v = [0; MAX_COEFFS];
        decode(self.data(), x, &mut v);
        v[..self.group.order()].to_vec()
    }

    pub fn encode(&self, coeffs: &[Elem]) -> Elem {
        assert_eq!(coeffs.len(), self.group.order());
        encode(self.data(), coeffs)
    }

    pub fn coefficient(&self, x: Elem, g: Elem) -> Elem {
        self.decode(x)[g as usize]
    }

    /// a·g for a coefficient a and group element g.
    pub fn monomial(&self, a: Elem, g: Elem) -> Elem {
        let mut v = vec![0; self.group.order()];
        v[g as usize] = a;
        self.encode(&v)
    }

    /// The identification a = a·1 of A inside A[G].
    pub fn embed_base(&self, a: Elem) -> Elem {
        self.monomial(a, 0)
    }

    pub fn group_element(&self, g: Elem) -> Elem {
        self.monomial(self.base.one(), g)
    }

    /// Σ_{g ∈ S} a·g.
    pub fn sum_over(&self, a: Elem, members: &[Elem]) -> Elem {
        let mut v = vec![0; self.group.order()];
        for &g in members {
            v[g as usize] = self.base.add(v[g as usize], a);
        }
        self.encode(&v)
    }
}
