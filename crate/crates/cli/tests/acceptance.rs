//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

use nilary_core::grid::{run_grid, GridSpec};
use nilary_core::ideal::{check_ideal_property, enumerate_all_ideals, exhaustive_property_oracle, zero_ideal};
use nilary_core::maps::relative_augmentation_report;
use nilary_core::registry::{run_check, Verdict};
use nilary_core::{make_ring, parse_expr, Caps, Property};

fn data(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect()
}

fn nilary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nilary"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn default_grid() -> GridSpec {
    GridSpec::load(&data("default.grid")).expect("default grid loads")
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn idempotent_witness() -> Outcome {
    let t = Instant::now();
    let out = nilary(&["check", "Z3[C6]", "--property", "nilary"]);
    let elapsed = t.elapsed();
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["value"] == false, format!("value {}", v["value"]))?;
    let pair = &v["witness"]["ideal_pair"];
    ensure(pair[0] == "2+2x^3" && pair[1] == "2+x^3", format!("witness {pair}"))?;
    ensure(elapsed < Duration::from_secs(60), format!("{elapsed:?}"))?;
    Ok(format!("value=false, e={}, 1-e={}, {:.2}s", pair[0], pair[1], elapsed.as_secs_f64()))
}

fn delta_nilpotency() -> Outcome {
    let g = default_grid();
    let t = Instant::now();
    let r = run_grid(&["L1.8".into()], &g).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let s = r.summary;
    ensure(s.total >= 20, format!("only {} instances", s.total))?;
    ensure(s.refuted == 0 && s.undecided == 0 && s.confirmed == s.total, format!("{s:?}"))?;
    let yes = r.reports.iter().filter(|r| r.hypothesis == Some(true)).count();
    ensure(yes > 0 && yes < s.total, "only one direction exercised")?;
    ensure(elapsed < Duration::from_secs(600), format!("{elapsed:?}"))?;
    Ok(format!(
        "{} instances, {yes} nilpotent, {} not, 0 refuted, {:.1}s",
        s.total,
        s.total - yes,
        elapsed.as_secs_f64()
    ))
}

fn annihilators() -> Outcome {
    let g = default_grid();
    let r = run_grid(&["L1.5".into(), "L1.7".into()], &g).map_err(|e| e.to_string())?;
    let bad: Vec<String> = r
        .reports
        .iter()
        .filter(|r| r.verdict != Verdict::Confirmed)
        .map(|r| format!("{} {} {}", r.id, r.instance, r.verdict))
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    Ok(format!("{} reports confirmed", r.summary.total))
}

fn final_theorem() -> Outcome {
    let g = GridSpec::load(&data("final-theorem.grid")).map_err(|e| e.to_string())?;
    ensure(g.exprs.len() == 6, "final-theorem grid must list six rings")?;
    let r = run_grid(&["T-equiv".into()], &g).map_err(|e| e.to_string())?;
    for rep in &r.reports {
        let w = rep.witness.clone().unwrap_or_default();
        let all = w["nilary"] == true && w["right_primary"] == true && w["left_primary"] == true;
        ensure(rep.verdict == Verdict::Confirmed && all, format!("{}: {w}", rep.instance))?;
    }
    Ok(format!("{} rings: nilary = right primary = left primary = true", r.reports.len()))
}

fn oracle_equivalence() -> Outcome {
    let g = default_grid();
    let caps = g.caps.clone();
    let (mut rings, mut decisions) = (0, 0);
    for e in &g.exprs {
        let ring = make_ring(&parse_expr(e).map_err(|e| e.to_string())?, &caps).map_err(|e| e.to_string())?;
        if ring.size() > 256 {
            continue;
        }
        rings += 1;
        let lattice = enumerate_all_ideals(&ring, &caps).map_err(|err| format!("{e}: {err}"))?;
        for i in lattice.ideals() {
            for prop in Property::ALL {
                let engine = check_ideal_property(&ring, i, prop, &caps).map_err(|e| e.to_string())?.holds;
                let oracle = lattice.oracle(&ring, i, prop, &caps).map_err(|e| e.to_string())?.is_none();
                ensure(
                    engine == oracle,
                    format!("{e}, ideal of size {}, {prop}: engine {engine}, oracle {oracle}", i.size()),
                )?;
                decisions += 1;
            }
        }
    }
    ensure(rings > 0, "no ring within 256 elements")?;
    Ok(format!("{rings} rings, {decisions} (ideal, property) decisions, 0 disagreements"))
}

fn prime_law() -> Outcome {
    let g = default_grid();
    let caps = g.caps.clone();
    let mut ideals_checked = 0;
    for e in &g.exprs {
        let ring = make_ring(&parse_expr(e).map_err(|e| e.to_string())?, &caps).map_err(|e| e.to_string())?;
        let family = if ring.size() <= caps.max_oracle_size {
            enumerate_all_ideals(&ring, &caps).map_err(|e| e.to_string())?.ideals().to_vec()
        } else {
            vec![zero_ideal(&ring)]
        };
        for i in &family {
            let has = |p| check_ideal_property(&ring, i, p, &caps).map(|o| o.holds);
            let (prime, semi, nil) = (
                has(Property::Prime).map_err(|err| format!("{e}: {err}"))?,
                has(Property::Semiprime).map_err(|err| format!("{e}: {err}"))?,
                has(Property::Nilary).map_err(|err| format!("{e}: {err}"))?,
            );
            ensure(prime == (semi && nil), format!("{e}, ideal of size {}", i.size()))?;
            ideals_checked += 1;
        }
    }
    Ok(format!("{} rings, {ideals_checked} ideals", g.exprs.len()))
}

fn structural_maps() -> Outcome {
    let g = default_grid();
    let caps = g.caps.clone();
    let mut pairs = 0;
    for e in &g.exprs {
        let ring = make_ring(&parse_expr(e).map_err(|e| e.to_string())?, &caps).map_err(|e| e.to_string())?;
        let ctx = ring.group_ring_context().ok_or(format!("{e} is not a group ring"))?;
        for h in ctx.group.normal_subgroups(&caps).map_err(|e| e.to_string())? {
            let rep = relative_augmentation_report(&ctx, &h, &caps).map_err(|err| format!("{e}: {err}"))?;
            ensure(rep.holds(), format!("{e}, |H| = {}: {rep:?}", h.order()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (instance, normal subgroup) pairs"))
}

fn t_nnilp_negative() -> Outcome {
    let caps = Caps::default();
    let ring = make_ring(&parse_expr("Z2[S3]").unwrap(), &caps).map_err(|e| e.to_string())?;
    let oracle = exhaustive_property_oracle(&ring, &zero_ideal(&ring), Property::Nilary, &caps).map_err(|e| e.to_string())?;
    ensure(!oracle, "oracle says Z2[S3] is nilary")?;
    let r = run_check("T-nnilp", "Z2[S3]", &caps).map_err(|e| e.to_string())?;
    ensure(r.hypothesis == Some(false), "T-nnilp hypothesis should be false")?;
    let w = r.witness.unwrap_or_default();
    let orders: Vec<u64> = w["non_nilpotent_normal_orders"]
        .as_array()
        .map(|a| a.iter().filter_map(|o| o["order"].as_u64()).collect())
        .unwrap_or_default();
    ensure(orders.contains(&3), format!("attribution {orders:?}"))?;
    Ok(format!("oracle: not nilary; non-nilpotent normal orders {orders:?}"))
}

fn conjecture_probe() -> Outcome {
    let t = Instant::now();
    let grid = data("conjecture.grid");
    let out = nilary(&["search", "conjecture1", "--grid", grid.to_str().unwrap()]);
    let elapsed = t.elapsed();
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let case = &v["cases"][0];
    ensure(case["instance"] == "Z3[S3]", format!("instance {}", case["instance"]))?;
    ensure(case["hypothesis"] == true, "hypothesis should hold on Z3[S3]")?;
    let status = case["status"].as_str().unwrap_or("");
    ensure(matches!(status, "confirmed" | "counterexample"), format!("status {status}"))?;
    ensure(elapsed < Duration::from_secs(1800), format!("{elapsed:?}"))?;
    Ok(format!(
        "Z3[S3]: {status} (p-nilary = {}), search status {}, {:.2}s",
        case["conclusion"],
        v["status"],
        elapsed.as_secs_f64()
    ))
}

fn parser() -> Outcome {
    let text = std::fs::read_to_string(data("corpus.txt")).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    ensure(lines.len() == 50, format!("corpus has {} expressions", lines.len()))?;
    for line in &lines {
        let e = parse_expr(line).map_err(|err| format!("{line}: {err}"))?;
        let printed = e.to_string();
        ensure(printed == *line, format!("{line} printed as {printed}"))?;
        ensure(parse_expr(&printed).ok() == Some(e), format!("{line} does not round-trip"))?;
    }
    for bad in ["Z1", "C2", "Z4["] {
        let out = nilary(&["check", bad, "--property", "prime"]);
        let err = String::from_utf8_lossy(&out.stderr);
        ensure(out.status.code() == Some(2), format!("{bad}: exit {:?}", out.status.code()))?;
        ensure(err.contains("at offset"), format!("{bad}: {err}"))?;
    }
    Ok("50/50 round-trip; Z1, C2, Z4[ rejected with offsets, exit 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Z3[C6] is not nilary, idempotent witness pair", idempotent_witness),
        ("Δ(G) nilpotency equivalence on the default grid", delta_nilpotency),
        ("annihilator identities on every instance and normal H", annihilators),
        ("final-theorem suite", final_theorem),
        ("principal-pair decisions equal the all-ideals oracle", oracle_equivalence),
        ("prime = semiprime and nilary", prime_law),
        ("relative augmentation ideals and induced isomorphisms", structural_maps),
        ("Z2[S3] not nilary, attributed to |A3| = 3", t_nnilp_negative),
        ("conjecture probe on Z3[S3]", conjecture_probe),
        ("expression parser", parser),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({secs:.1}s)", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
