//! Executable statements about finite group rings. Each check computes a
//! hypothesis and a conclusion independently on one instance A[G] and
//! compares them; nothing is derived from the statement being checked.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use once_cell::sync::OnceCell;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::elements::Elem;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, RingExpr};
use crate::group::{is_prime, prime_power_base, GroupPredicate, GroupTable, PGroup, Subgroup};
use crate::ideal::{
    self, check_ideal_property, enumerate_all_ideals, ideal_annihilator, ideal_closure,
    nilpotency_index, principal_table, pseudo_radical, zero_ideal, Ideal,
    Property, PropertyOutcome, Side, Witness,
};
use crate::maps::{
    augmentation_ideal, eps_h, extend_ideal, h_hat, is_central, one_sided_span,
    central_product_identity, relative_augmentation_report, subgroup_ring, SubgroupRing,
};
use crate::ring::{make_ring, FiniteRing, GroupRingContext};

/// Upper bound on the number of ideals an ideal-quantified check iterates
/// when the full lattice is available.
pub const IDEAL_FAMILY_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Implication,
    Equivalence,
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "REFUTED")]
    Refuted,
    #[serde(rename = "undecided-cap")]
    UndecidedCap,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Vacuous => "vacuous",
            Verdict::Refuted => "REFUTED",
            Verdict::UndecidedCap => "undecided-cap",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub instance: String,
    pub hypothesis: Option<bool>,
    pub conclusion: Option<bool>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
    pub runtime_ms: u64,
}

/// One instantiation of a statement (one subgroup, one ideal, ...).
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub witness: Option<Value>,
}

impl Case {
    fn new(label: impl Into<String>, hypothesis: bool, conclusion: bool) -> Case {
        Case {
            label: label.into(),
            hypothesis,
            conclusion,
            witness: None,
        }
    }

    fn with(mut self, witness: Value) -> Case {
        self.witness = Some(witness);
        self
    }
}

#[derive(Debug, Default)]
struct Outcome {
    cases: Vec<Case>,
    notes: Vec<String>,
}

impl Outcome {
    fn one(case: Case) -> Outcome {
        Outcome {
            cases: vec![case],
            notes: Vec::new(),
        }
    }

    fn note(mut self, s: impl Into<String>) -> Outcome {
        self.notes.push(s.into());
        self
    }
}

type CheckFn = fn(&Instance, &Caps) -> Result<Outcome>;

pub struct TheoremCheck {
    pub id: &'static str,
    pub statement: &'static str,
    pub anchor: &'static str,
    pub mode: Mode,
    run: CheckFn,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegistryEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub anchor: &'static str,
    pub mode: Mode,
}

/// A ring under test with memoized facts shared by all checks run on it.
pub struct Instance {
    pub text: String,
    pub ring: Arc<FiniteRing>,
    pub ctx: Option<GroupRingContext>,
    facts: Mutex<HashMap<(u64, Property), PropertyOutcome>>,
    delta: OnceCell<Ideal>,
    normal: OnceCell<Vec<Subgroup>>,
}

impl Instance {
    pub fn new(expr: &RingExpr, caps: &Caps) -> Result<Instance> {
        let ring = make_ring(expr, caps)?;
        Ok(Instance::from_ring(expr.to_string(), ring))
    }

    pub fn parse(text: &str, caps: &Caps) -> Result<Instance> {
        Instance::new(&parse_expr(text)?, caps)
    }

    pub fn from_ring(text: String, ring: Arc<FiniteRing>) -> Instance {
        Instance {
            text,
            ctx: ring.group_ring_context(),
            ring,
            facts: Mutex::new(HashMap::new()),
            delta: OnceCell::new(),
            normal: OnceCell::new(),
        }
    }

    fn ctx(&self, check: &str) -> Result<&GroupRingContext> {
        self.ctx.as_ref().ok_or_else(|| Error::NotApplicable {
            check: check.to_string(),
            reason: format!("{} is not a group ring", self.text),
        })
    }

    /// Property of the zero ideal of `ring`, memoized.
    pub fn ring_has(&self, ring: &FiniteRing, prop: Property, caps: &Caps) -> Result<PropertyOutcome> {
        let key = (ring.uid(), prop);
        if let Some(o) = self.facts.lock().unwrap().get(&key) {
            return Ok(o.clone());
        }
        let out = check_ideal_property(ring, &zero_ideal(ring), prop, caps)?;
        self.facts.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn delta(&self, caps: &Caps) -> Result<&Ideal> {
        let ctx = self.ctx("Δ(G)")?;
        self.delta.get_or_try_init(|| augmentation_ideal(ctx, None, caps))
    }

    fn normal_subgroups(&self, caps: &Caps) -> Result<&[Subgroup]> {
        let ctx = self.ctx("normal subgroups")?;
        Ok(self
            .normal
            .get_or_try_init(|| ctx.group.normal_subgroups(caps))?
            .as_slice())
    }
}

fn subgroup_label(g: &GroupTable, h: &Subgroup) -> String {
    let names: Vec<&str> = h.members.iter().map(|&x| g.label(x)).collect();
    format!("{{{}}}", names.join(", "))
}

fn elem_labels(ring: &FiniteRing, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| ring.label(x)).collect()
}

fn ideal_json(ring: &FiniteRing, i: &Ideal) -> Value {
    json!({ "generators": elem_labels(ring, i.generators()), "size": i.size() })
}

fn property_witness(ring: &FiniteRing, out: &PropertyOutcome) -> Option<Value> {
    out.witness.as_ref().map(|w| witness_json(ring, w))
}

pub fn witness_json(ring: &FiniteRing, w: &Witness) -> Value {
    match *w {
        Witness::ElementPair { a, b } => json!({ "a": ring.label(a), "b": ring.label(b) }),
        Witness::IdealPair { x, y } => json!({
            "ideal_pair": [ring.label(x), ring.label(y)],
        }),
        Witness::Element { x } => json!({ "element": ring.label(x) }),
    }
}

/// G trivial, or G a p-group with p nilpotent in A. Returns the prime when
/// there is one.
fn p_group_nilpotent(g: &GroupTable, a: &FiniteRing) -> (bool, Option<u64>) {
    match g.p_group() {
        PGroup::Trivial => (true, None),
        PGroup::Prime(p) => (a.integer_is_nilpotent(p), Some(p)),
        PGroup::Not { .. } => (false, None),
    }
}

/// The central subgroups of G (all subgroups of Z(G)).
fn central_subgroups(g: &GroupTable, caps: &Caps) -> Result<Vec<Subgroup>> {
    Ok(g.all_subgroups(caps)?
        .into_iter()
        .filter(|h| g.is_central(h))
        .collect())
}

/// Ideals to quantify over: every ideal when the lattice is small enough,
/// else 0 together with every distinct principal ideal.
fn ideal_family(ring: &FiniteRing, caps: &Caps) -> Result<(Vec<Ideal>, &'static str)> {
    if ring.size() <= caps.max_oracle_size {
        match enumerate_all_ideals(ring, caps) {
            Ok(l) if l.len() <= IDEAL_FAMILY_LIMIT => {
                return Ok((l.ideals().to_vec(), "all ideals"));
            }
            Ok(_) => {}
            Err(e) if e.is_cap() => {}
            Err(e) => return Err(e),
        }
    }
    let t = principal_table(ring, caps)?;
    let mut out = vec![zero_ideal(ring)];
    out.extend(t.ideals().iter().map(|p| p.ideal.clone()).filter(|i| !i.is_zero()));
    Ok((out, "principal ideals"))
}

fn regime_note(regime: &str, n: usize) -> String {
    format!("quantified over {n} {regime}")
}

// ---------------------------------------------------------------------------
// Checks

fn chk_l18(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("L1.8")?;
    let delta = inst.delta(caps)?;
    let index = nilpotency_index(&ctx.ring, delta, caps)?;
    let (rhs, p) = p_group_nilpotent(&ctx.group, &ctx.base);
    Ok(Outcome::one(
        Case::new("Δ(G)", index.is_some(), rhs).with(json!({
            "nilpotency_index": index,
            "p": p,
            "p_group": !matches!(ctx.group.p_group(), PGroup::Not { .. }),
        })),
    ))
}

fn chk_dgh_nilp(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("L-DGH-nilp")?;
    let mut out = Outcome::default();
    for h in inst.normal_subgroups(caps)? {
        let d = augmentation_ideal(ctx, Some(h), caps)?;
        let index = nilpotency_index(&ctx.ring, &d, caps)?;
        let (hg, _) = ctx.group.subgroup_as_group(h)?;
        let (rhs, p) = p_group_nilpotent(&hg, &ctx.base);
        out.cases.push(
            Case::new(subgroup_label(&ctx.group, h), index.is_some(), rhs)
                .with(json!({ "H": subgroup_label(&ctx.group, h), "nilpotency_index": index, "p": p })),
        );
    }
    Ok(out)
}

fn chk_l15(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("L1.5")?;
    let ring = &ctx.ring;
    let mut out = Outcome::default();
    for h in inst.normal_subgroups(caps)? {
        let d = augmentation_ideal(ctx, Some(h), caps)?;
        let left = ideal_annihilator(ring, &d, Side::Left, caps)?;
        let right = ideal_annihilator(ring, &d, Side::Right, caps)?;
        let hat = h_hat(ctx, h);
        let hat_r = one_sided_span(ring, &[hat], Side::Right);
        let r_hat = one_sided_span(ring, &[hat], Side::Left);
        let central = is_central(ring, hat);
        let ok = left.members == right.members
            && left.members == hat_r
            && left.members == r_hat
            && central
            && left.members.count() > 1;
        let label = subgroup_label(&ctx.group, h);
        out.cases.push(Case::new(label.clone(), true, ok).with(json!({
            "H": label,
            "H_hat": ring.label(hat),
            "left_annihilator_size": left.members.count(),
            "right_annihilator_size": right.members.count(),
            "H_hat_ideal_size": hat_r.count(),
            "central": central,
        })));
    }
    Ok(out)
}

fn chk_l17(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("L1.7")?;
    let ring = &ctx.ring;
    let delta = inst.delta(caps)?;
    let left = ideal_annihilator(ring, delta, Side::Left, caps)?;
    let right = ideal_annihilator(ring, delta, Side::Right, caps)?;
    let all: Vec<Elem> = ctx.group.elements().collect();
    let n = ctx.group.order() as u64;
    let multiples: Vec<Elem> = ctx.base.elements().map(|a| ctx.sum_over(a, &all)).collect();
    let star = crate::elements::ElementSet::from_iter_in(ring.size(), multiples.iter().copied());
    let torsion = crate::elements::ElementSet::from_iter_in(
        ring.size(),
        ctx.base
            .elements()
            .filter(|&a| ctx.base.scalar(n, a) == 0)
            .map(|a| ctx.sum_over(a, &all)),
    );
    let meet = delta.members().intersection(&left.members);
    let coincide = left.members == right.members && left.members == star;
    let meet_ok = meet == torsion;
    Ok(Outcome::one(Case::new("Δ(G)", true, coincide && meet_ok).with(json!({
        "annihilators_coincide": left.members == right.members,
        "annihilator_is_A_sum": left.members == star,
        "annihilator_size": left.members.count(),
        "intersection": elem_labels(ring, &meet.to_vec()),
        "expected_intersection": elem_labels(ring, &torsion.to_vec()),
    }))))
}

fn sample_ideals(sub: &SubgroupRing, caps: &Caps) -> Result<Vec<Ideal>> {
    let r = sub.ring();
    let mut out = vec![
        zero_ideal(r),
        augmentation_ideal(&sub.ctx, None, caps)?,
        ideal::whole_ideal(r),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    let mut elems: Vec<Elem> = r.elements().skip(1).collect();
    elems.shuffle(&mut rng);
    for &x in elems.iter().take(3) {
        let i = ideal_closure(r, &[x], caps)?;
        if !out.contains(&i) {
            out.push(i);
        }
    }
    Ok(out)
}

fn chk_l14(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("L1.4")?;
    let mut out = Outcome::default();
    for h in central_subgroups(&ctx.group, caps)? {
        let sub = subgroup_ring(ctx, &h, caps)?;
        let ideals = sample_ideals(&sub, caps)?;
        let label = subgroup_label(&ctx.group, &h);
        for (a, i) in ideals.iter().enumerate() {
            for (b, j) in ideals.iter().enumerate() {
                let ok = central_product_identity(ctx, &sub, &h, i, j, caps)?;
                let mut case = Case::new(format!("H={label} I#{a} J#{b}"), true, ok);
                if !ok {
                    case = case.with(json!({
                        "H": label,
                        "I": ideal_json(sub.ring(), i),
                        "J": ideal_json(sub.ring(), j),
                    }));
                }
                out.cases.push(case);
            }
        }
    }
    Ok(out.note("ideals of A[H]: 0, Δ(H), A[H] and seeded principal ideals"))
}

fn chk_wedderburn(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("L-wedderburn")?;
    let root = ideal::prime_radical(&ctx.ring, caps)?;
    let delta = inst.delta(caps)?;
    let lhs = &root == delta;
    let base_semiprime = ideal::prime_radical(&ctx.base, caps)?.is_zero();
    let (p_zero, p) = match ctx.group.p_group() {
        PGroup::Prime(p) => (ctx.base.integer(p) == 0, Some(p)),
        PGroup::Trivial => (true, None),
        PGroup::Not { .. } => (false, None),
    };
    let rhs = p.is_some() && base_semiprime && p_zero || matches!(ctx.group.p_group(), PGroup::Trivial) && base_semiprime;
    Ok(Outcome::one(Case::new("√0", lhs, rhs).with(json!({
        "prime_radical_size": root.size(),
        "delta_size": delta.size(),
        "A_semiprime": base_semiprime,
        "p": p,
        "p_is_zero": p_zero,
    }))))
}

fn chk_prime_gr(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("L-prime-gr")?;
    let lhs = inst.ring_has(&ctx.ring, Property::Prime, caps)?;
    let a_prime = inst.ring_has(&ctx.base, Property::Prime, caps)?.holds;
    let g_prime = ctx.group.predicate(GroupPredicate::Prime, caps)?;
    Ok(Outcome::one(
        Case::new("A[G]", lhs.holds, a_prime && g_prime.holds).with(json!({
            "A_prime": a_prime,
            "G_prime": g_prime.holds,
            "A[G]_not_prime_witness": property_witness(&ctx.ring, &lhs),
        })),
    ))
}

fn chk_gp13i(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ring = &inst.ring;
    let (ideals, regime) = if ring.size() <= caps.max_oracle_size {
        ideal_family(ring, caps)?
    } else {
        (vec![zero_ideal(ring)], "zero ideal")
    };
    let mut out = Outcome::default();
    for (k, i) in ideals.iter().enumerate() {
        let prime = check_ideal_property(ring, i, Property::Prime, caps)?;
        let semi = check_ideal_property(ring, i, Property::Semiprime, caps)?;
        let nil = check_ideal_property(ring, i, Property::Nilary, caps)?;
        let pnil = check_ideal_property(ring, i, Property::PNilary, caps)?;
        let case = Case::new(
            format!("I#{k}"),
            prime.holds,
            semi.holds && nil.holds && semi.holds == (semi.holds && pnil.holds),
        );
        out.cases.push(case.with(json!({
            "I": ideal_json(ring, i),
            "prime": prime.holds,
            "semiprime": semi.holds,
            "nilary": nil.holds,
            "p_nilary": pnil.holds,
        })));
    }
    Ok(out.note(regime_note(regime, ideals.len())))
}

/// Proper ideals of the family, for checks that pass to R/I.
fn quotient_family(ring: &FiniteRing, caps: &Caps) -> Result<(Vec<Ideal>, &'static str)> {
    caps.require("ring for per-ideal quotients", ring.size(), caps.max_quotient_family_size)?;
    let (ideals, regime) = ideal_family(ring, caps)?;
    Ok((proper(ideals), regime))
}

fn proper(ideals: Vec<Ideal>) -> Vec<Ideal> {
    ideals.into_iter().filter(|i| !i.is_whole()).collect()
}

fn chk_p23(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ring = &inst.ring;
    let (ideals, regime) = quotient_family(ring, caps)?;
    let mut out = Outcome::default();
    for (k, i) in ideals.iter().enumerate() {
        let q = ideal::quotient_ring(ring, i, caps)?;
        for prop in [Property::Nilary, Property::PNilary] {
            let lhs = check_ideal_property(ring, i, prop, caps)?.holds;
            let rhs = check_ideal_property(&q, &zero_ideal(&q), prop, caps)?.holds;
            out.cases.push(Case::new(format!("I#{k} {prop}"), lhs, rhs).with(json!({
                "I": ideal_json(ring, i),
                "property": prop,
                "ideal": lhs,
                "quotient": rhs,
            })));
        }
    }
    Ok(out.note(regime_note(regime, ideals.len())))
}

fn chk_l13(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ring = &inst.ring;
    let (ideals, regime) = quotient_family(ring, caps)?;
    let nilary = inst.ring_has(ring, Property::Nilary, caps)?.holds;
    let pnilary = inst.ring_has(ring, Property::PNilary, caps)?.holds;
    let mut out = Outcome::default();
    for (k, i) in ideals.iter().enumerate() {
        let q = ideal::quotient_ring(ring, i, caps)?;
        let q0 = zero_ideal(&q);
        let q_nil = check_ideal_property(&q, &q0, Property::Nilary, caps)?.holds;
        let q_pnil = check_ideal_property(&q, &q0, Property::PNilary, caps)?.holds;
        let i_nilpotent = nilpotency_index(ring, i, caps)?.is_some();
        let root = pseudo_radical(ring, i, caps)?;
        let root_nil_sum = nilpotency_index(ring, &root, caps)?.is_some();
        let details = json!({ "I": ideal_json(ring, i) });
        out.cases.push(
            Case::new(format!("I#{k} (i)"), q_nil && i_nilpotent, nilary).with(details.clone()),
        );
        out.cases.push(Case::new(format!("I#{k} (ii)"), q_pnil && root_nil_sum, pnilary).with(details));
    }
    Ok(out.note(regime_note(regime, ideals.len())))
}

fn chk_t230(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("T2.3.0")?;
    let ring = &ctx.ring;
    let (ideals, regime) = ideal_family(ring, caps)?;
    let mut out = Outcome::default();
    for h in central_subgroups(&ctx.group, caps)? {
        let sub = subgroup_ring(ctx, &h, caps)?;
        let label = subgroup_label(&ctx.group, &h);
        for (k, j) in ideals.iter().enumerate() {
            let hyp = check_ideal_property(ring, j, Property::Nilary, caps)?.holds;
            let restricted = sub.restrict(j, caps)?;
            let concl = check_ideal_property(sub.ring(), &restricted, Property::Nilary, caps)?.holds;
            let mut case = Case::new(format!("H={label} J#{k}"), hyp, concl);
            if hyp && !concl {
                case = case.with(json!({ "H": label, "J": ideal_json(ring, j) }));
            }
            out.cases.push(case);
        }
    }
    Ok(out.note(regime_note(regime, ideals.len())))
}

fn chk_c_hz(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("C-HZ")?;
    let big = inst.ring_has(&ctx.ring, Property::Nilary, caps)?.holds;
    let mut out = Outcome::default();
    for h in central_subgroups(&ctx.group, caps)? {
        let sub = subgroup_ring(ctx, &h, caps)?;
        let small = inst.ring_has(sub.ring(), Property::Nilary, caps)?;
        let label = subgroup_label(&ctx.group, &h);
        out.cases.push(
            Case::new(label.clone(), big, small.holds)
                .with(json!({ "H": label, "A[H]_witness": property_witness(sub.ring(), &small) })),
        );
    }
    Ok(out)
}

fn chk_c22(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("C2.2")?;
    let mut out = Outcome::default();
    for prop in [Property::Nilary, Property::PNilary] {
        let big = inst.ring_has(&ctx.ring, prop, caps)?.holds;
        let a = inst.ring_has(&ctx.base, prop, caps)?;
        out.cases.push(
            Case::new(prop.name(), big, a.holds)
                .with(json!({ "property": prop, "A_witness": property_witness(&ctx.base, &a) })),
        );
    }
    Ok(out)
}

fn chk_c24(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("C2.4")?;
    let delta = inst.delta(caps)?;
    let mut out = Outcome::default();
    for prop in [Property::Nilary, Property::PNilary] {
        let a = inst.ring_has(&ctx.base, prop, caps)?.holds;
        let d = check_ideal_property(&ctx.ring, delta, prop, caps)?;
        out.cases.push(Case::new(prop.name(), a, d.holds).with(json!({
            "property": prop,
            "A": a,
            "delta": d.holds,
            "delta_witness": property_witness(&ctx.ring, &d),
        })));
    }
    Ok(out)
}

fn chk_c_gh(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("C-GH")?;
    let mut out = Outcome::default();
    for h in inst.normal_subgroups(caps)? {
        let d = augmentation_ideal(ctx, Some(h), caps)?;
        let q = eps_h(ctx, h, caps)?;
        let label = subgroup_label(&ctx.group, h);
        for prop in [Property::Nilary, Property::PNilary] {
            let lhs = check_ideal_property(&ctx.ring, &d, prop, caps)?.holds;
            let rhs = inst.ring_has(&q.quotient.ring, prop, caps)?.holds;
            out.cases.push(
                Case::new(format!("H={label} {prop}"), lhs, rhs)
                    .with(json!({ "H": label, "property": prop, "ideal": lhs, "ring": rhs })),
            );
        }
    }
    Ok(out)
}

fn chk_t_nnilp(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("T-nnilp")?;
    let nil = inst.ring_has(&ctx.ring, Property::Nilary, caps)?;
    let mut offenders = Vec::new();
    for h in inst.normal_subgroups(caps)?.iter().filter(|h| !h.is_trivial()) {
        if !ctx.base.integer_is_nilpotent(h.order() as u64) {
            offenders.push(json!({
                "H": subgroup_label(&ctx.group, h),
                "order": h.order(),
            }));
        }
    }
    let concl = offenders.is_empty();
    let mut case = Case::new("A[G]", nil.holds, concl);
    case = case.with(json!({
        "non_nilpotent_normal_orders": offenders,
        "not_nilary_witness": property_witness(&ctx.ring, &nil),
    }));
    let mut out = Outcome::one(case);
    if !nil.holds && !concl {
        out.notes.push(
            "A[G] is not nilary, consistent with the non-nilpotent normal subgroup orders".into(),
        );
    }
    Ok(out)
}

fn chk_c_ordg(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("C-ordG")?;
    let mut out = Outcome::default();
    for prop in [Property::Nilary, Property::PNilary] {
        let big = inst.ring_has(&ctx.ring, prop, caps)?.holds;
        let a = inst.ring_has(&ctx.base, prop, caps)?.holds;
        let n = ctx.group.order() as u64;
        let n_nil = ctx.base.integer_is_nilpotent(n);
        out.cases.push(
            Case::new(prop.name(), big, a && n_nil)
                .with(json!({ "property": prop, "A": a, "order_nilpotent": n_nil })),
        );
    }
    Ok(out)
}

fn chk_t_agp(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("T-AGp")?;
    let a = inst.ring_has(&ctx.base, Property::Nilary, caps)?.holds;
    let (pn, p) = p_group_nilpotent(&ctx.group, &ctx.base);
    let hyp = a && pn;
    let big = if hyp {
        inst.ring_has(&ctx.ring, Property::Nilary, caps)?
    } else {
        // The conclusion is still computed so the report carries both booleans.
        match inst.ring_has(&ctx.ring, Property::Nilary, caps) {
            Ok(o) => o,
            Err(e) if e.is_cap() => {
                return Ok(Outcome::one(Case::new("A[G]", false, false))
                    .note("conclusion not computed: hypothesis false and ring above the pair cap"));
            }
            Err(e) => return Err(e),
        }
    };
    Ok(Outcome::one(Case::new("A[G]", hyp, big.holds).with(json!({
        "A_nilary": a,
        "p": p,
        "p_group_and_p_nilpotent": pn,
        "witness": property_witness(&ctx.ring, &big),
    }))))
}

fn chk_p_ded(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("P-ded")?;
    let ded = ctx.group.predicate(GroupPredicate::Dedekind, caps)?.holds;
    let pg = !matches!(ctx.group.p_group(), PGroup::Not { .. });
    if !ded {
        return Ok(Outcome::one(Case::new("A[G]", false, pg)).note("G is not Dedekind"));
    }
    let nil = inst.ring_has(&ctx.ring, Property::Nilary, caps)?.holds;
    Ok(Outcome::one(
        Case::new("A[G]", nil, pg).with(json!({ "dedekind": ded, "nilary": nil, "p_group": pg })),
    ))
}

fn chk_p27(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("P2.7")?;
    let a = inst.ring_has(&ctx.base, Property::PNilary, caps)?.holds;
    let delta = inst.delta(caps)?;
    let root = pseudo_radical(&ctx.ring, delta, caps)?;
    let root_nil = nilpotency_index(&ctx.ring, &root, caps)?;
    let big = inst.ring_has(&ctx.ring, Property::PNilary, caps)?;
    Ok(Outcome::one(
        Case::new("A[G]", a && root_nil.is_some(), big.holds).with(json!({
            "A_p_nilary": a,
            "sqrt_delta_size": root.size(),
            "sqrt_delta_nilpotency_index": root_nil,
        })),
    ))
}

/// char(A) = p prime and A a field.
fn field_char(a: &FiniteRing) -> Option<u64> {
    let p = a.characteristic();
    (is_prime(p) && a.is_field()).then_some(p)
}

fn chk_p_fgp(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("P-FGp")?;
    let hyp = match (field_char(&ctx.base), ctx.group.p_group()) {
        (Some(p), PGroup::Prime(q)) => p == q,
        (Some(_), PGroup::Trivial) => true,
        _ => false,
    };
    if !hyp {
        return Ok(Outcome::one(Case::new("F[G]", false, false))
            .note("A is not a field whose characteristic is the prime of G"));
    }
    let nil = inst.ring_has(&ctx.ring, Property::Nilary, caps)?;
    let pnil = inst.ring_has(&ctx.ring, Property::PNilary, caps)?;
    Ok(Outcome::one(Case::new("F[G]", true, nil.holds && pnil.holds)))
}

fn primary(inst: &Instance, ctx: &GroupRingContext, caps: &Caps) -> Result<(bool, bool)> {
    Ok((
        inst.ring_has(&ctx.ring, Property::RightPrimary, caps)?.holds,
        inst.ring_has(&ctx.ring, Property::LeftPrimary, caps)?.holds,
    ))
}

fn chk_p_prim(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("P-prim")?;
    let (right, left) = primary(inst, ctx, caps)?;
    let (pn, p) = p_group_nilpotent(&ctx.group, &ctx.base);
    Ok(Outcome::one(Case::new("A[G]", right || left, pn).with(json!({
        "right_primary": right,
        "left_primary": left,
        "p": p,
    }))))
}

fn chk_p_prim2(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("P-prim2")?;
    let (right, left) = primary(inst, ctx, caps)?;
    let g_prime = ctx.group.predicate(GroupPredicate::Prime, caps)?.holds;
    let sigma = ctx.group.nu_sigma(caps)?.sigma;
    let (sg, _) = ctx.group.subgroup_as_group(&sigma)?;
    let (pn, p) = p_group_nilpotent(&sg, &ctx.base);
    Ok(Outcome::one(
        Case::new("A[G]", right || left, g_prime || pn).with(json!({
            "right_primary": right,
            "left_primary": left,
            "G_prime": g_prime,
            "sigma_order": sigma.order(),
            "p": p,
        })),
    )
    .note("σ(G) = G for finite G"))
}

fn chk_t_equiv(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("T-equiv")?;
    let hyp = matches!(
        (field_char(&ctx.base), ctx.group.p_group()),
        (Some(p), PGroup::Prime(q)) if p == q
    );
    if !hyp {
        return Ok(Outcome::one(Case::new("F[G]", false, false))
            .note("A is not a field whose characteristic is the prime of G"));
    }
    let nil = inst.ring_has(&ctx.ring, Property::Nilary, caps)?.holds;
    let (right, left) = primary(inst, ctx, caps)?;
    Ok(Outcome::one(
        Case::new("F[G]", true, nil && right && left)
            .with(json!({ "nilary": nil, "right_primary": right, "left_primary": left })),
    ))
}

fn chk_p_ess(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("P-ess")?;
    let nil = inst.ring_has(&ctx.ring, Property::Nilary, caps)?.holds;
    let pa = ideal::prime_radical(&ctx.base, caps)?.is_zero();
    let delta = inst.delta(caps)?;
    let ess = check_ideal_property(&ctx.ring, delta, Property::Essential, caps)?;
    let (pn, _) = p_group_nilpotent(&ctx.group, &ctx.base);
    Ok(Outcome::one(
        Case::new("A[G]", nil && pa, ess.holds || pn).with(json!({
            "nilary": nil,
            "P(A)_zero": pa,
            "delta_essential": ess.holds,
            "p_group_and_p_nilpotent": pn,
        })),
    ))
}

/// e = o(g)⁻¹ Σ_k g^k for the least central g ≠ 1 whose order is a unit in A.
fn averaging_idempotent(ctx: &GroupRingContext) -> Option<(Elem, Elem)> {
    let z = ctx.group.center();
    z.members.iter().copied().filter(|&g| g != 0).find_map(|g| {
        let k = ctx.group.element_order(g) as u64;
        let kk = ctx.base.integer(k);
        let inv = ctx.base.elements().find(|&a| ctx.base.mul(a, kk) == ctx.base.one())?;
        let cyc: Vec<Elem> = (0..k as usize).map(|i| ctx.group.power(g, i)).collect();
        Some((g, ctx.sum_over(inv, &cyc)))
    })
}

fn chk_e214(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("E2.14")?;
    let ring = &ctx.ring;
    let Some((g, e)) = averaging_idempotent(ctx) else {
        return Ok(Outcome::one(Case::new("A[G]", false, false))
            .note("no central g ≠ 1 whose order is a unit in A"));
    };
    let f = ring.sub(ring.one(), e);
    let ie = ideal_closure(ring, &[e], caps)?;
    let if_ = ideal_closure(ring, &[f], caps)?;
    let annihilate = ideal::product(ring, &ie, &if_)?.is_zero();
    let idempotent = ring.is_idempotent(e) && e != 0 && f != 0;
    let non_nil = nilpotency_index(ring, &ie, caps)?.is_none() && nilpotency_index(ring, &if_, caps)?.is_none();
    let nil = inst.ring_has(ring, Property::Nilary, caps)?;
    let concl = idempotent && is_central(ring, e) && annihilate && non_nil && !nil.holds;
    Ok(Outcome::one(Case::new("A[G]", true, concl).with(json!({
        "g": ctx.group.label(g),
        "e": ring.label(e),
        "one_minus_e": ring.label(f),
        "not_nilary_witness": property_witness(ring, &nil),
    }))))
}

fn zmod_prime_power(a: &FiniteRing) -> Option<(u64, u32)> {
    match a.provenance() {
        crate::ring::Provenance::Zmod { n } => {
            let p = prime_power_base(*n)?;
            let mut k = 0;
            let mut m = *n;
            while m > 1 {
                m /= p;
                k += 1;
            }
            Some((p, k))
        }
        _ => None,
    }
}

fn coefficient_ring(inst: &Instance) -> Arc<FiniteRing> {
    inst.ctx
        .as_ref()
        .map(|c| c.base.clone())
        .unwrap_or_else(|| inst.ring.clone())
}

fn chk_r_n1(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let a = coefficient_ring(inst);
    let Some((p, n)) = zmod_prime_power(&a) else {
        return Ok(Outcome::one(Case::new("A", false, false)).note("A is not Z_{p^n}"));
    };
    let nil = inst.ring_has(&a, Property::Nilary, caps)?.holds;
    let prime = inst.ring_has(&a, Property::Prime, caps)?;
    let concl = nil && (prime.holds == (n == 1));
    Ok(Outcome::one(Case::new("A", true, concl).with(json!({
        "p": p,
        "n": n,
        "nilary": nil,
        "prime": prime.holds,
        "not_prime_witness": property_witness(&a, &prime),
    }))))
}

fn chk_e_prime(inst: &Instance, caps: &Caps) -> Result<Outcome> {
    let ctx = inst.ctx("E-prime")?;
    let Some((p, n)) = zmod_prime_power(&ctx.base).filter(|&(_, n)| n > 1) else {
        return Ok(Outcome::one(Case::new("A[G]", false, false)).note("A is not Z_{p^n} with n > 1"));
    };
    let i = ideal_closure(&ctx.base, &[ctx.base.integer(p)], caps)?;
    let ext = extend_ideal(ctx, &i, caps)?;
    let iso = ext.isomorphism.as_ref().map(|h| h.is_isomorphism()).unwrap_or(false);
    let b = ideal::quotient_ring(&ctx.base, &i, caps)?;
    let b_prime = inst.ring_has(&b, Property::Prime, caps)?.holds;
    let ig_nil = nilpotency_index(&ctx.ring, &ext.ideal, caps)?;
    let ag_prime = inst.ring_has(&ctx.ring, Property::Prime, caps)?;
    let concl = iso && b_prime && ig_nil.is_some() && !ag_prime.holds;
    Ok(Outcome::one(Case::new("A[G]", true, concl).with(json!({
        "p": p,
        "n": n,
        "I[G]_size": ext.ideal.size(),
        "isomorphism_verified": iso,
        "A/I_prime": b_prime,
        "I[G]_nilpotency_index": ig_nil,
        "A[G]_not_prime_witness": property_witness(&ctx.ring, &ag_prime),
    }))))
}

// ---------------------------------------------------------------------------

macro_rules! check {
    ($id:expr, $mode:ident, $statement:expr, $anchor:expr, $f:expr) => {
        TheoremCheck {
            id: $id,
            statement: $statement,
            anchor: $anchor,
            mode: Mode::$mode,
            run: $f,
        }
    };
}

static REGISTRY: &[TheoremCheck] = &[
    check!("L1.8", Equivalence,
        "Δ(G) is nilpotent iff G is a finite p-group and p is nilpotent in A",
        "G is a finite p-group", chk_l18),
    check!("L-DGH-nilp", Equivalence,
        "for every normal H: Δ(G,H) is nilpotent iff H is a p-group and p is nilpotent in A",
        "iff Δ(G,H) is nilpotent", chk_dgh_nilp),
    check!("L1.5", Always,
        "for every normal H: ℓ(Δ(G,H)) = r(Δ(G,H)) = ĤA[G] ≠ 0 and Ĥ is central",
        "if and only if H is finite", chk_l15),
    check!("L1.7", Always,
        "ℓ(Δ(G)) = r(Δ(G)) = A·Σg and Δ(G) ∩ Δ(G)* = {aΣg : |G|a = 0}",
        "left and right annihilator ideals of Δ(G) coincide", chk_l17),
    check!("L1.4", Always,
        "for central H and ideals I, J of A[H]: (IJ)A[G] = (IA[G])(JA[G])",
        "ω_H preserves products", chk_l14),
    check!("L-wedderburn", Equivalence,
        "√0 of A[G] equals Δ(G) iff G is a p-group, A is semiprime and p = 0 in A",
        "locally normal p-group, A is semiprime", chk_wedderburn),
    check!("L-prime-gr", Equivalence,
        "A[G] is prime iff A is prime and G is prime (so never for finite G ≠ 1)",
        "A is prime and G is prime", chk_prime_gr),
    check!("GP1.3i", Equivalence,
        "an ideal is prime iff it is semiprime and nilary",
        "semiprime (p-)nilary ideal", chk_gp13i),
    check!("P2.3", Equivalence,
        "I is a (p-)nilary ideal iff R/I is a (p-)nilary ring",
        "if and only if A/I is a (p-)nilary ring", chk_p23),
    check!("L1.3", Implication,
        "R/I nilary and I nilpotent imply R nilary; R/I p-nilary and √I a sum of nilpotent ideals imply R p-nilary",
        "I is a nilpotent ideal", chk_l13),
    check!("T2.3.0", Implication,
        "for central H: J a nilary ideal of A[G] implies J ∩ A[H] is a nilary ideal of A[H]",
        "J∩A[H] is a nilary ideal", chk_t230),
    check!("C-HZ", Implication,
        "for central H: A[G] nilary implies A[H] nilary",
        "then A[H] is a nilary ring", chk_c_hz),
    check!("C2.2", Implication,
        "A[G] (p-)nilary implies A (p-)nilary",
        "then A is a nilary ring", chk_c22),
    check!("C2.4", Equivalence,
        "A is (p-)nilary iff Δ(G) is a (p-)nilary ideal",
        "Δ(G) is a (p-)nilary ideal", chk_c24),
    check!("C-GH", Equivalence,
        "for every normal H: Δ(G,H) is a (p-)nilary ideal iff A[G/H] is a (p-)nilary ring",
        "A[G/H] is a (p-)nilary ring", chk_c_gh),
    check!("T-nnilp", Implication,
        "A[G] nilary implies |H| is nilpotent in A for every nontrivial normal H",
        "normal subgroup of G is nilpotent in A", chk_t_nnilp),
    check!("C-ordG", Implication,
        "A[G] (p-)nilary implies A (p-)nilary and |G| nilpotent in A",
        "|G| is nilpotent in A", chk_c_ordg),
    check!("T-AGp", Implication,
        "A nilary, G a p-group and p nilpotent in A imply A[G] nilary",
        "then A[G] is a nilary ring", chk_t_agp),
    check!("P-ded", Implication,
        "G Dedekind and A[G] nilary imply G is a p-group",
        "then G is a p-group", chk_p_ded),
    check!("P2.7", Implication,
        "A p-nilary and √Δ(G) a sum of nilpotent ideals imply A[G] p-nilary",
        "sum of nilpotent ideals", chk_p27),
    check!("P-FGp", Implication,
        "F a field of characteristic p and G a p-group imply F[G] (p-)nilary",
        "F[G] is a (p-)nilary ring", chk_p_fgp),
    check!("P-prim", Implication,
        "A[G] right or left primary implies G is a p-group and p is nilpotent in A",
        "G is a p-group and p is nilpotent in A", chk_p_prim),
    check!("P-prim2", Implication,
        "A[G] right or left primary implies G prime, or σ(G) a p-group with p nilpotent in A",
        "σ(G) is a p-group and p is nilpotent in A", chk_p_prim2),
    check!("T-equiv", Implication,
        "F a field of characteristic p and G a p-group: F[G] is nilary, right primary and left primary",
        "F[G] is a right primary ring", chk_t_equiv),
    check!("P-ess", Implication,
        "A[G] nilary and P(A) = 0 imply Δ(G) essential or G a p-group with p nilpotent in A",
        "either Δ(G)⊴^{ess}A[G] or G is a finite p-group", chk_p_ess),
    check!("E2.14", Implication,
        "a central g ≠ 1 of order invertible in A yields a central idempotent e with ⟨e⟩⟨1−e⟩ = 0, so A[G] is not nilary",
        "Hence A[G] is not nilary.", chk_e214),
    check!("R-n1", Implication,
        "Z_{p^n} is nilary, and prime exactly when n = 1",
        "but it is not prime", chk_r_n1),
    check!("E-prime", Implication,
        "A = Z_{p^n}, n > 1, I = ⟨p⟩: A[G]/I[G] ≅ (A/I)[G] with A/I prime, I[G] nilpotent, A[G] not prime",
        "B[G] ≅ A[G]/(I)[G]", chk_e_prime),
];

pub fn registry() -> &'static [TheoremCheck] {
    REGISTRY
}

pub fn list_registry() -> Vec<RegistryEntry> {
    REGISTRY
        .iter()
        .map(|c| RegistryEntry {
            id: c.id,
            statement: c.statement,
            anchor: c.anchor,
            mode: c.mode,
        })
        .collect()
}

pub fn find_check(id: &str) -> Result<&'static TheoremCheck> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

fn aggregate(mode: Mode, cases: &[Case]) -> (Option<bool>, Option<bool>, Verdict, Option<&Case>) {
    let hyp_any = cases.iter().any(|c| c.hypothesis);
    let concl_all = cases.iter().all(|c| c.conclusion);
    match mode {
        Mode::Implication => {
            let bad = cases.iter().find(|c| c.hypothesis && !c.conclusion);
            let concl = cases.iter().filter(|c| c.hypothesis).all(|c| c.conclusion);
            let verdict = match (bad, hyp_any) {
                (Some(_), _) => Verdict::Refuted,
                (None, false) => Verdict::Vacuous,
                (None, true) => Verdict::Confirmed,
            };
            let concl = if hyp_any { concl } else { concl_all };
            (Some(hyp_any), Some(concl), verdict, bad)
        }
        Mode::Equivalence => {
            let bad = cases.iter().find(|c| c.hypothesis != c.conclusion);
            let hyp_all = cases.iter().all(|c| c.hypothesis);
            let verdict = match (bad, cases.is_empty()) {
                (Some(_), _) => Verdict::Refuted,
                (None, true) => Verdict::Vacuous,
                (None, false) => Verdict::Confirmed,
            };
            (Some(hyp_all), Some(concl_all), verdict, bad)
        }
        Mode::Always => {
            let bad = cases.iter().find(|c| !c.conclusion);
            let verdict = match (bad, cases.is_empty()) {
                (Some(_), _) => Verdict::Refuted,
                (None, true) => Verdict::Vacuous,
                (None, false) => Verdict::Confirmed,
            };
            (Some(true), Some(concl_all), verdict, bad)
        }
    }
}

/// Runs one check on one instance. Cap and timeout errors become
/// `undecided-cap`; an instance the check does not apply to is vacuous.
pub fn run_check_on(check: &TheoremCheck, inst: &Instance, caps: &Caps) -> CheckReport {
    let started = Instant::now();
    let caps = caps.started();
    let result = (check.run)(inst, &caps);
    let runtime_ms = started.elapsed().as_millis() as u64;
    let mut report = CheckReport {
        id: check.id.to_string(),
        instance: inst.text.clone(),
        hypothesis: None,
        conclusion: None,
        verdict: Verdict::UndecidedCap,
        witness: None,
        details: Value::Null,
        runtime_ms,
    };
    match result {
        Ok(out) => {
            let (h, c, verdict, bad) = aggregate(check.mode, &out.cases);
            report.hypothesis = h;
            report.conclusion = c;
            report.verdict = verdict;
            report.witness = match bad {
                Some(case) => Some(json!({
                    "case": case.label,
                    "hypothesis": case.hypothesis,
                    "conclusion": case.conclusion,
                    "data": case.witness,
                })),
                None => out
                    .cases
                    .iter()
                    .find(|c| c.hypothesis || check.mode != Mode::Implication)
                    .or(out.cases.first())
                    .and_then(|c| c.witness.clone()),
            };
            let mut details = serde_json::Map::new();
            details.insert("cases".into(), json!(out.cases.len()));
            if !out.notes.is_empty() {
                details.insert("notes".into(), json!(out.notes));
            }
            report.details = Value::Object(details);
        }
        Err(e) if e.is_cap() => {
            report.details = json!({ "reason": e.to_string() });
        }
        Err(Error::NotApplicable { reason, .. }) => {
            report.verdict = Verdict::Vacuous;
            report.details = json!({ "reason": reason });
        }
        Err(e) => {
            report.verdict = Verdict::Refuted;
            report.witness = Some(json!({ "engine_error": e.to_string() }));
        }
    }
    report
}

pub fn run_check(id: &str, instance: &str, caps: &Caps) -> Result<CheckReport> {
    let check = find_check(id)?;
    let inst = match Instance::parse(instance, caps) {
        Ok(i) => i,
        Err(e) if e.is_cap() => {
            return Ok(CheckReport {
                id: id.to_string(),
                instance: instance.to_string(),
                hypothesis: None,
                conclusion: None,
                verdict: Verdict::UndecidedCap,
                witness: None,
                details: json!({ "reason": e.to_string() }),
                runtime_ms: 0,
            })
        }
        Err(e) => return Err(e),
    };
    Ok(run_check_on(check, &inst, caps))
}

/// Decides one property of an ideal (the zero ideal when `gens` is empty)
/// and packages it as a report.
pub fn property_report(instance: &str, prop: Property, gens: &[String], caps: &Caps) -> Result<PropertyReport> {
    let caps = caps.started();
    let started = Instant::now();
    let inst = Instance::parse(instance, &caps)?;
    let ring = &inst.ring;
    let elems = gens
        .iter()
        .map(|g| {
            ring.find_label(g.trim())
                .ok_or_else(|| Error::InvalidIdeal(format!("no element labelled `{g}` in {instance}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let i = ideal_closure(ring, &elems, &caps)?;
    let out = check_ideal_property(ring, &i, prop, &caps)?;
    Ok(PropertyReport {
        instance: inst.text.clone(),
        property: prop,
        ideal: ideal_json(ring, &i),
        value: out.holds,
        witness: property_witness(ring, &out),
        notes: out.notes,
        runtime_ms: started.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub instance: String,
    pub property: Property,
    pub ideal: Value,
    pub value: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub runtime_ms: u64,
}

/// The Δ(G,H) four-way report for every normal subgroup of an instance.
pub fn structural_maps(inst: &Instance, caps: &Caps) -> Result<Vec<(String, crate::maps::RelativeAugmentationReport)>> {
    let ctx = inst.ctx("structural maps")?;
    inst.normal_subgroups(caps)?
        .iter()
        .map(|h| Ok((subgroup_label(&ctx.group, h), relative_augmentation_report(ctx, h, caps)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str, inst: &str) -> CheckReport {
        run_check(id, inst, &Caps::default()).unwrap()
    }

    #[test]
    fn registry_shape() {
        let list = list_registry();
        assert!(list.len() >= 27);
        let mut ids: Vec<&str> = list.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), list.len());
        let e = list.iter().find(|e| e.id == "E2.14").unwrap();
        assert_eq!(e.anchor, "Hence A[G] is not nilary.");
        assert!(list.iter().all(|e| !e.anchor.is_empty()));
        assert!(matches!(find_check("nope"), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn example_instance() {
        let r = run("E2.14", "Z3[C6]");
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.hypothesis, Some(true));
        let w = r.witness.unwrap();
        assert_eq!(w["e"], "2+2x^3");
        assert_eq!(w["one_minus_e"], "2+x^3");
    }

    #[test]
    fn lemma_on_delta_nilpotence() {
        let r = run("L1.8", "Z2[C2]");
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.hypothesis, Some(true));
        assert_eq!(r.witness.unwrap()["nilpotency_index"], 2);
        let r = run("L1.8", "Z3[C6]");
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.hypothesis, Some(false));
    }

    #[test]
    fn vacuous_when_coefficients_not_nilary() {
        let r = run("T-AGp", "Z6[C2]");
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert_eq!(r.hypothesis, Some(false));
    }

    #[test]
    fn attribution_for_s3() {
        let r = run("T-nnilp", "Z2[S3]");
        assert_eq!(r.verdict, Verdict::Vacuous);
        let w = r.witness.unwrap();
        let orders: Vec<u64> = w["non_nilpotent_normal_orders"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| o["order"].as_u64().unwrap())
            .collect();
        assert!(orders.contains(&3));
    }

    #[test]
    fn non_group_ring_instances() {
        let r = run("L1.8", "Z4");
        assert_eq!(r.verdict, Verdict::Vacuous);
        let r = run("R-n1", "Z4");
        assert_eq!(r.verdict, Verdict::Confirmed);
        let r = run("R-n1", "Z6");
        assert_eq!(r.verdict, Verdict::Vacuous);
    }

    #[test]
    fn caps_give_undecided() {
        let caps = Caps {
            max_pair_size: 16,
            ..Caps::default()
        };
        let r = run_check("C2.2", "Z3[C6]", &caps).unwrap();
        assert_eq!(r.verdict, Verdict::UndecidedCap);
    }

    #[test]
    fn aggregation_rules() {
        let c = |h, k| Case::new("c", h, k);
        assert_eq!(aggregate(Mode::Implication, &[c(false, false)]).2, Verdict::Vacuous);
        assert_eq!(aggregate(Mode::Implication, &[c(true, true), c(false, false)]).2, Verdict::Confirmed);
        assert_eq!(aggregate(Mode::Implication, &[c(true, false)]).2, Verdict::Refuted);
        assert_eq!(aggregate(Mode::Equivalence, &[c(false, false)]).2, Verdict::Confirmed);
        assert_eq!(aggregate(Mode::Equivalence, &[c(false, true)]).2, Verdict::Refuted);
        assert_eq!(aggregate(Mode::Always, &[]).2, Verdict::Vacuous);
    }

    #[test]
    fn every_check_on_a_small_instance() {
        for c in registry() {
            for inst in ["Z2[C2]", "Z3[S3]", "Z4[C2]", "Z2[C2 x C2]"] {
                let r = run(c.id, inst);
                assert_ne!(r.verdict, Verdict::Refuted, "{} on {inst}: {r:?}", c.id);
                assert_ne!(r.verdict, Verdict::UndecidedCap, "{} on {inst}: {r:?}", c.id);
            }
        }
    }
}
