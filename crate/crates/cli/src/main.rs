use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use nilary_core::cache::{Cache, CacheKey};
use nilary_core::grid::{run_grid_with, search_counterexample, CaseStatus, GridSpec, SearchStatus, Target};
use nilary_core::ideal::{self, nilpotency_index};
use nilary_core::registry::{self, list_registry, CheckReport, Instance, PropertyReport, Verdict};
use nilary_core::{Caps, Error, Property};

const EXIT_OK: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Exhaustive ideal theory of finite group rings.
#[derive(Parser, Debug)]
#[command(name = "nilary", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write results to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Directory for cached reports.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Worker threads for grid runs.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Seed for sampled validation above the exhaustive caps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report runtime_ms as 0 so output is byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide one property of an ideal (the zero ideal by default).
    Check {
        expr: String,
        #[arg(long)]
        property: Property,
        /// Comma-separated generator labels, e.g. "1+x,x^2".
        #[arg(long, value_name = "GENS")]
        ideal: Option<String>,
        /// Exit 1 unless the property has this value.
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Run registered checks over a grid. IDS is comma-separated or "all".
    Verify {
        ids: String,
        #[arg(long, value_name = "FILE")]
        grid: PathBuf,
        /// Run every instance even after a refutation.
        #[arg(long)]
        keep_going: bool,
    },
    /// Search a grid for a counterexample: question1, question2 or conjecture1.
    Search {
        target: Target,
        #[arg(long, value_name = "FILE")]
        grid: PathBuf,
    },
    /// Sizes, characteristic, radicals and augmentation ideals of a ring.
    Info { expr: String },
    /// List the registered checks.
    Registry,
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_cap() => EXIT_CAP,
            Error::Parse(_) | Error::InvalidDescriptor(_) | Error::UnknownCheck(_) | Error::InvalidIdeal(_) => {
                EXIT_USAGE
            }
            Error::Io(_) | Error::Json(_) => EXIT_USAGE,
            _ => EXIT_FALSE,
        };
        Failure(code, e.to_string())
    }
}

fn caps_with_seed(mut caps: Caps, seed: Option<u64>) -> Caps {
    if let Some(s) = seed {
        caps.seed = s;
    }
    caps
}

fn load_grid(path: &Path, seed: Option<u64>) -> Result<GridSpec, Failure> {
    let mut g = GridSpec::load(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    g.caps = caps_with_seed(g.caps, seed);
    Ok(g)
}

fn split_ids(ids: &str) -> Vec<String> {
    if ids == "all" {
        return list_registry().iter().map(|e| e.id.to_string()).collect();
    }
    ids.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn check(
    cli: &Cli,
    cache: Option<&Cache>,
    expr: &str,
    property: Property,
    ideal: Option<&str>,
    expect: Option<bool>,
) -> Result<(Value, u8), Failure> {
    let caps = caps_with_seed(Caps::default(), cli.seed);
    let gens: Vec<String> = ideal
        .map(|s| s.split(',').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect())
        .unwrap_or_default();
    let canonical = nilary_core::parse_expr(expr).map_err(Error::from)?.to_string();
    let key = CacheKey::new(&canonical, &format!("{property}|{}", gens.join(",")), &caps);
    let cached = cache.and_then(|c| c.load::<PropertyReport>(&key));
    let mut report = match cached {
        Some(r) => r,
        None => {
            let r = registry::property_report(&canonical, property, &gens, &caps)?;
            if let Some(c) = cache {
                c.store(&key, &r)?;
            }
            r
        }
    };
    if cli.no_timing {
        report.runtime_ms = 0;
    }
    let code = match expect {
        Some(want) if want != report.value => EXIT_FALSE,
        _ => EXIT_OK,
    };
    Ok((serde_json::to_value(report).expect("serializable"), code))
}

fn verify(cli: &Cli, cache: Option<&Cache>, ids: &str, grid: &Path, keep_going: bool) -> Result<(Value, u8), Failure> {
    let plan = load_grid(grid, cli.seed)?;
    let ids = split_ids(ids);
    for id in &ids {
        registry::find_check(id)?;
    }
    // Cached reports are reused per (instance, check); the rest run as a grid.
    let exprs = plan.parsed()?;
    let mut have: Vec<Option<CheckReport>> = Vec::new();
    for e in &exprs {
        for id in &ids {
            let key = CacheKey::new(&e.to_string(), id, &plan.caps);
            have.push(cache.and_then(|c| c.load(&key)));
        }
    }
    let missing: Vec<String> = exprs
        .iter()
        .enumerate()
        .filter(|(i, _)| have[i * ids.len()..(i + 1) * ids.len()].iter().any(Option::is_none))
        .map(|(_, e)| e.to_string())
        .collect();
    let sub = GridSpec {
        exprs: missing,
        caps: plan.caps.clone(),
        checks: None,
    };
    let fresh = run_grid_with(&ids, &sub, keep_going)?;
    let mut fresh_iter = fresh.reports.into_iter().peekable();
    let mut reports = Vec::new();
    for (i, e) in exprs.iter().enumerate() {
        let text = e.to_string();
        for (j, id) in ids.iter().enumerate() {
            let slot = have[i * ids.len() + j].take();
            let from_run = if fresh_iter.peek().is_some_and(|r| r.instance == text && &r.id == id) {
                fresh_iter.next()
            } else {
                None
            };
            let Some(mut r) = from_run.or(slot) else { continue };
            if let Some(c) = cache {
                if r.verdict != Verdict::UndecidedCap || plan.caps.timeout_per_instance_s.is_none() {
                    c.store(&CacheKey::new(&text, id, &plan.caps), &r)?;
                }
            }
            if cli.no_timing {
                r.runtime_ms = 0;
            }
            reports.push(r);
        }
    }
    let summary = nilary_core::grid::Summary::of(&reports);
    for r in reports.iter().filter(|r| r.verdict == Verdict::Refuted) {
        eprintln!("REFUTED: {} on {}", r.id, r.instance);
    }
    let code = if summary.refuted > 0 {
        EXIT_FALSE
    } else if summary.undecided > 0 {
        EXIT_CAP
    } else {
        EXIT_OK
    };
    let mut out = json!({ "reports": reports, "summary": summary });
    if fresh.aborted {
        out["aborted"] = json!(true);
    }
    Ok((out, code))
}

fn search(cli: &Cli, target: Target, grid: &Path) -> Result<(Value, u8), Failure> {
    let plan = load_grid(grid, cli.seed)?;
    let mut report = search_counterexample(target, &plan)?;
    if cli.no_timing {
        report.cases.iter_mut().for_each(|c| c.runtime_ms = 0);
    }
    let code = if report.status == SearchStatus::CounterexampleFound {
        EXIT_FALSE
    } else if report.cases.iter().any(|c| c.status == CaseStatus::UndecidedCap) {
        EXIT_CAP
    } else {
        EXIT_OK
    };
    Ok((serde_json::to_value(report).expect("serializable"), code))
}

fn info(cli: &Cli, expr: &str) -> Result<(Value, u8), Failure> {
    let caps = caps_with_seed(Caps::default(), cli.seed);
    let inst = Instance::parse(expr, &caps)?;
    let ring = &inst.ring;
    let mut out = json!({
        "expr": inst.text,
        "size": ring.size(),
        "characteristic": ring.characteristic(),
        "commutative": ring.is_commutative(),
        "units": ring.units().count(),
    });
    let radical = |r: nilary_core::Result<nilary_core::Ideal>| match r {
        Ok(i) => json!({ "size": i.size(), "generators": i.generators().iter().map(|&x| ring.label(x)).collect::<Vec<_>>() }),
        Err(e) => json!({ "undecided": e.to_string() }),
    };
    out["prime_radical"] = radical(ideal::prime_radical(ring, &caps));
    out["jacobson_radical"] = radical(ideal::jacobson_radical(ring, &caps));
    if let Some(ctx) = &inst.ctx {
        let g = &ctx.group;
        out["coefficients"] = json!({ "size": ctx.base.size(), "characteristic": ctx.base.characteristic() });
        out["group"] = json!({
            "order": g.order(),
            "abelian": g.is_abelian(),
            "center_order": g.center().order(),
            "p_group": format!("{:?}", g.p_group()),
        });
        let maps = registry::structural_maps(&inst, &caps)?;
        let mut deltas = Vec::new();
        for (label, rep) in maps {
            deltas.push(json!({
                "H": label,
                "size": rep.kernel_size,
                "index": ring.size() / rep.kernel_size.max(1),
                "kernel_equals_generated": rep.all_equal,
                "isomorphism_verified": rep.isomorphism_verified,
            }));
        }
        let delta = nilary_core::maps::augmentation_ideal(ctx, None, &caps)?;
        out["augmentation_ideal"] = json!({
            "size": delta.size(),
            "nilpotency_index": nilpotency_index(ring, &delta, &caps)?,
        });
        out["relative_augmentation_ideals"] = json!(deltas);
    }
    Ok((out, EXIT_OK))
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    }
    let cache = match &cli.cache {
        Some(dir) => Some(Cache::open(dir)?),
        None => None,
    };
    match &cli.command {
        Command::Check {
            expr,
            property,
            ideal,
            expect,
        } => check(cli, cache.as_ref(), expr, *property, ideal.as_deref(), *expect),
        Command::Verify { ids, grid, keep_going } => verify(cli, cache.as_ref(), ids, grid, *keep_going),
        Command::Search { target, grid } => search(cli, *target, grid),
        Command::Info { expr } => info(cli, expr),
        Command::Registry => Ok((serde_json::to_value(list_registry()).expect("serializable"), EXIT_OK)),
    }
}

fn emit(cli: &Cli, value: &Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((value, code)) => {
            if let Err(e) = emit(&cli, &value) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
