//! Grids of instances: running registered checks over them and searching
//! them for counterexamples to the open questions.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, RingExpr};
use crate::group::GroupPredicate;
use crate::ideal::Property;
use crate::registry::{find_check, run_check_on, CheckReport, Instance, TheoremCheck, Verdict};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub exprs: Vec<String>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

impl GridSpec {
    pub fn from_json(text: &str) -> Result<GridSpec> {
        let plan: GridSpec = serde_json::from_str(text)?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn load(path: &std::path::Path) -> Result<GridSpec> {
        GridSpec::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.caps;
        if c.max_ring_size == 0 || c.max_oracle_size == 0 || c.max_group_order == 0 {
            return Err(Error::InvalidDescriptor("caps must be positive".into()));
        }
        if matches!(c.timeout_per_instance_s, Some(t) if t.is_nan() || t <= 0.0) {
            return Err(Error::InvalidDescriptor("timeout_per_instance_s must be positive".into()));
        }
        self.parsed().map(|_| ())
    }

    pub fn parsed(&self) -> Result<Vec<RingExpr>> {
        self.exprs.iter().map(|e| Ok(parse_expr(e)?)).collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub confirmed: usize,
    pub vacuous: usize,
    pub refuted: usize,
    pub undecided: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Summary {
        let mut s = Summary {
            total: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            match r.verdict {
                Verdict::Confirmed => s.confirmed += 1,
                Verdict::Vacuous => s.vacuous += 1,
                Verdict::Refuted => s.refuted += 1,
                Verdict::UndecidedCap => s.undecided += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
    /// Set when a refutation stopped the run before every instance ran.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub aborted: bool,
}

fn undecided(id: &str, instance: &str, e: &Error) -> CheckReport {
    CheckReport {
        id: id.to_string(),
        instance: instance.to_string(),
        hypothesis: None,
        conclusion: None,
        verdict: Verdict::UndecidedCap,
        witness: None,
        details: json!({ "reason": e.to_string() }),
        runtime_ms: 0,
    }
}

fn resolve(ids: &[String]) -> Result<Vec<&'static TheoremCheck>> {
    ids.iter().map(|id| find_check(id)).collect()
}

/// Runs every check in `ids` on every grid instance. Reports come out
/// instance-major in grid order, checks in the order given.
pub fn run_grid(ids: &[String], grid: &GridSpec) -> Result<GridReport> {
    run_grid_with(ids, grid, true)
}

/// Like [`run_grid`]; without `keep_going` the run stops after the batch of
/// instances in which the first refutation appears.
pub fn run_grid_with(ids: &[String], grid: &GridSpec, keep_going: bool) -> Result<GridReport> {
    let checks = resolve(ids)?;
    let exprs = grid.parsed()?;
    let caps = &grid.caps;
    let batch = if keep_going {
        exprs.len().max(1)
    } else {
        rayon::current_num_threads().max(1)
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    let mut aborted = false;
    for (n, chunk) in exprs.chunks(batch).enumerate() {
        let done: Vec<Vec<CheckReport>> = chunk
            .par_iter()
            .map(|expr| run_instance(&checks, expr, caps))
            .collect::<Result<_>>()?;
        reports.extend(done.into_iter().flatten());
        if !keep_going && reports.iter().any(|r| r.verdict == Verdict::Refuted) {
            aborted = (n + 1) * batch < exprs.len();
            break;
        }
    }
    for r in reports.iter().filter(|r| r.verdict == Verdict::Refuted) {
        log::error!("{} REFUTED on {}: {:?}", r.id, r.instance, r.witness);
    }
    Ok(GridReport {
        summary: Summary::of(&reports),
        reports,
        aborted,
    })
}

fn run_instance(checks: &[&'static TheoremCheck], expr: &RingExpr, caps: &Caps) -> Result<Vec<CheckReport>> {
    let text = expr.to_string();
    let inst = match Instance::new(expr, caps) {
        Ok(i) => i,
        Err(e) if e.is_cap() => {
            return Ok(checks.iter().map(|c| undecided(c.id, &text, &e)).collect());
        }
        Err(e) => return Err(e),
    };
    log::info!("grid instance {text} ({} elements)", inst.ring.size());
    Ok(checks.par_iter().map(|c| run_check_on(c, &inst, caps)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Question1,
    Question2,
    Conjecture1,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Question1 => "question1",
            Target::Question2 => "question2",
            Target::Conjecture1 => "conjecture1",
        })
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        match s {
            "question1" => Ok(Target::Question1),
            "question2" => Ok(Target::Question2),
            "conjecture1" => Ok(Target::Conjecture1),
            other => Err(Error::UnknownCheck(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    /// Hypothesis false on this instance.
    Vacuous,
    /// Hypothesis and conclusion both hold.
    Confirmed,
    Counterexample,
    UndecidedCap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchCase {
    pub instance: String,
    pub hypothesis: Option<bool>,
    pub conclusion: Option<bool>,
    pub status: CaseStatus,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// No instance satisfies the hypothesis.
    Vacuous,
    CounterexampleFound,
    NoneFoundWithinGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: Target,
    pub status: SearchStatus,
    /// First instance, in grid order, that is a counterexample.
    pub witness: Option<String>,
    pub cases: Vec<SearchCase>,
}

/// Every nontrivial normal subgroup order satisfies `pred`.
fn normal_orders_all(inst: &Instance, caps: &Caps, pred: impl Fn(u64) -> bool) -> Result<(bool, Vec<usize>)> {
    let ctx = inst.ctx.as_ref().expect("group ring");
    let orders: Vec<usize> = ctx
        .group
        .normal_subgroups(caps)?
        .iter()
        .filter(|h| !h.is_trivial())
        .map(|h| h.order())
        .collect();
    Ok((orders.iter().all(|&n| pred(n as u64)), orders))
}

fn search_case(target: Target, inst: &Instance, caps: &Caps) -> Result<(bool, bool, Value)> {
    let Some(ctx) = inst.ctx.as_ref() else {
        return Ok((false, true, json!({ "reason": "not a group ring" })));
    };
    let a = &ctx.base;
    match target {
        Target::Question1 => {
            let g_prime = ctx.group.predicate(GroupPredicate::Prime, caps)?.holds;
            if !g_prime {
                return Ok((false, true, json!({ "G_prime": false })));
            }
            let mut hyp = false;
            let mut concl = true;
            for p in [Property::Nilary, Property::PNilary] {
                if inst.ring_has(a, p, caps)?.holds {
                    hyp = true;
                    concl &= inst.ring_has(&ctx.ring, p, caps)?.holds;
                }
            }
            Ok((hyp, concl, json!({ "G_prime": true })))
        }
        Target::Question2 => {
            let (orders_ok, orders) = normal_orders_all(inst, caps, |n| a.integer_is_nilpotent(n))?;
            let mut hyp = false;
            let mut concl = true;
            let mut per = serde_json::Map::new();
            for p in [Property::Nilary, Property::PNilary] {
                let a_has = inst.ring_has(a, p, caps)?.holds;
                if a_has && orders_ok {
                    hyp = true;
                    let out = inst.ring_has(&ctx.ring, p, caps)?;
                    concl &= out.holds;
                    per.insert(p.name().into(), json!(out.holds));
                }
            }
            Ok((hyp, concl, json!({ "normal_orders": orders, "A[G]": per })))
        }
        Target::Conjecture1 => {
            let p = a.characteristic();
            let field = a.is_field();
            let (orders_ok, orders) = normal_orders_all(inst, caps, |n| a.integer(n) == a.zero())?;
            if !(field && orders_ok) {
                return Ok((
                    false,
                    true,
                    json!({ "field": field, "characteristic": p, "normal_orders": orders }),
                ));
            }
            let out = inst.ring_has(&ctx.ring, Property::PNilary, caps)?;
            let witness = out
                .witness
                .as_ref()
                .map(|w| crate::registry::witness_json(&ctx.ring, w));
            Ok((
                true,
                out.holds,
                json!({ "characteristic": p, "normal_orders": orders, "witness": witness }),
            ))
        }
    }
}

pub fn search_counterexample(target: Target, grid: &GridSpec) -> Result<SearchReport> {
    let exprs = grid.parsed()?;
    let cases: Vec<SearchCase> = exprs
        .par_iter()
        .map(|expr| {
            let text = expr.to_string();
            let started = Instant::now();
            let caps = grid.caps.started();
            let result = Instance::new(expr, &caps).and_then(|inst| search_case(target, &inst, &caps));
            let runtime_ms = started.elapsed().as_millis() as u64;
            match result {
                Ok((hyp, concl, details)) => Ok(SearchCase {
                    instance: text,
                    hypothesis: Some(hyp),
                    conclusion: Some(concl),
                    status: match (hyp, concl) {
                        (false, _) => CaseStatus::Vacuous,
                        (true, true) => CaseStatus::Confirmed,
                        (true, false) => CaseStatus::Counterexample,
                    },
                    details,
                    runtime_ms,
                }),
                Err(e) if e.is_cap() => Ok(SearchCase {
                    instance: text,
                    hypothesis: None,
                    conclusion: None,
                    status: CaseStatus::UndecidedCap,
                    details: json!({ "reason": e.to_string() }),
                    runtime_ms,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let witness = cases
        .iter()
        .find(|c| c.status == CaseStatus::Counterexample)
        .map(|c| c.instance.clone());
    let status = if witness.is_some() {
        SearchStatus::CounterexampleFound
    } else if cases.iter().all(|c| c.status == CaseStatus::Vacuous) {
        SearchStatus::Vacuous
    } else {
        SearchStatus::NoneFoundWithinGrid
    };
    Ok(SearchReport {
        target,
        status,
        witness,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(exprs: &[&str]) -> GridSpec {
        GridSpec {
            exprs: exprs.iter().map(|s| s.to_string()).collect(),
            ..GridSpec::default()
        }
    }

    #[test]
    fn empty_grid() {
        let r = run_grid(&["L1.8".into()], &grid(&[])).unwrap();
        assert!(r.reports.is_empty());
        assert_eq!(r.summary, Summary::default());
    }

    #[test]
    fn order_is_instance_major() {
        let ids = vec!["L1.8".to_string(), "C2.2".to_string()];
        let r = run_grid(&ids, &grid(&["Z2[C2]", "Z3[C2]", "Z4[C3]"])).unwrap();
        let got: Vec<(&str, &str)> = r.reports.iter().map(|r| (r.instance.as_str(), r.id.as_str())).collect();
        assert_eq!(
            got,
            [
                ("Z2[C2]", "L1.8"),
                ("Z2[C2]", "C2.2"),
                ("Z3[C2]", "L1.8"),
                ("Z3[C2]", "C2.2"),
                ("Z4[C3]", "L1.8"),
                ("Z4[C3]", "C2.2"),
            ]
        );
        assert_eq!(r.summary.refuted, 0);
    }

    #[test]
    fn unknown_ids_and_bad_specs() {
        assert!(matches!(run_grid(&["X".into()], &grid(&[])), Err(Error::UnknownCheck(_))));
        assert!(GridSpec::from_json(r#"{"exprs": ["Z1"]}"#).is_err());
        assert!(GridSpec::from_json(r#"{"exprs": [], "caps": {"max_oracle_size": 0}}"#).is_err());
        let g = GridSpec::from_json(r#"{"exprs": ["Z2[C2]"], "caps": {"max_group_order": 8}}"#).unwrap();
        assert_eq!(g.caps.max_group_order, 8);
        assert_eq!(g.caps.max_pair_size, Caps::default().max_pair_size);
    }

    #[test]
    fn question1_is_vacuous_on_finite_groups() {
        let r = search_counterexample(Target::Question1, &grid(&["Z2[C2]", "Z4[S3]"])).unwrap();
        assert_eq!(r.status, SearchStatus::Vacuous);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn question2_on_z4_c2() {
        let r = search_counterexample(Target::Question2, &grid(&["Z4[C2]"])).unwrap();
        assert_eq!(r.cases[0].hypothesis, Some(true));
        assert_eq!(r.cases[0].status, CaseStatus::Confirmed);
        assert_eq!(r.status, SearchStatus::NoneFoundWithinGrid);
    }

    #[test]
    fn cap_marks_instance_undecided() {
        let mut g = grid(&["Z2[C2]", "Z3[S3]"]);
        g.caps.max_pair_size = 64;
        let r = search_counterexample(Target::Conjecture1, &g).unwrap();
        assert_eq!(r.cases[0].status, CaseStatus::Confirmed);
        assert_eq!(r.cases[1].status, CaseStatus::UndecidedCap);
    }
}
