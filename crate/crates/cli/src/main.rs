//! `reflectlab`: list and verify module catalogs, derive reflection
//! bounds, and check them against class-group data.
//!
//! Exit status: 0 when everything passed or was skipped, 1 when any check
//! failed, 2 on usage or I/O errors.

mod http;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reflectlab_core::boundsolver::{derive_report, BoundReport, Level};
use reflectlab_core::catalog::{build_case, verify_case, CaseInstance, CaseReport, CaseSpec, CatalogError, SettingId};
use reflectlab_core::fieldcheck::{
    check_pairs, fetch_remote, pair_resolvents, parse_records, CheckSummary, FetchQuery, FileCache, PairReport,
    Verdict,
};
use reflectlab_core::groups::Family;
use serde_json::json;

#[derive(Parser)]
#[command(name = "reflectlab", version, about = "Reflection bounds for l-ranks of class groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog cases.
    Cases {
        #[command(subcommand)]
        action: CasesAction,
    },
    /// Build a case and check its exact sequences.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        json: bool,
    },
    /// Derive the bound for a case.
    Derive {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "cls")]
        level: LevelArg,
        #[arg(long)]
        json: bool,
    },
    /// Check the derived bound on field records.
    Check {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Download field records from a JSON field database.
    Fetch {
        #[arg(long)]
        source: String,
        #[arg(long)]
        galois: String,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        disc_max: Option<u64>,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum CasesAction {
    /// Every case of the test grid with its settings.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct CaseArgs {
    /// s3, s4, a4, d2l or semidirect.
    #[arg(long = "case")]
    family: String,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    /// ff-mu, ff-nomu or nf.
    #[arg(long)]
    setting: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    H1,
    Cls,
    Cl,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::H1 => Level::H1,
            LevelArg::Cls => Level::PicOrClS,
            LevelArg::Cl => Level::FullCl,
        }
    }
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cases {
            action: CasesAction::List { json },
        } => list(json),
        Command::Verify { case, json } => verify(&case, json),
        Command::Derive { case, level, json } => derive(&case, level.into(), json),
        Command::Check { case, data, json } => check(&case, data, json),
        Command::Fetch {
            source,
            galois,
            degree,
            disc_max,
            limit,
            out,
        } => fetch(source, &galois, degree, disc_max, limit, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn spec_of(args: &CaseArgs) -> Result<(CaseSpec, SettingId), Failure> {
    let family = Family::from_id(&args.family).ok_or_else(|| {
        usage(format!("unknown case `{}` (s3, s4, a4, d2l, semidirect)", args.family))
    })?;
    let spec = CaseSpec::new(family, args.l, args.r).map_err(|e| usage(e.to_string()))?;
    let setting: SettingId = args.setting.parse().map_err(|e: CatalogError| usage(e.to_string()))?;
    if !spec.settings().contains(&setting) {
        return Err(usage(format!("setting {setting} is not available for {}", spec.label())));
    }
    Ok((spec, setting))
}

/// Builds the case; a verification failure is a check failure, anything
/// else is a usage error.
fn instance(args: &CaseArgs) -> Result<Result<CaseInstance, String>, Failure> {
    let (spec, setting) = spec_of(args)?;
    match build_case(spec, setting) {
        Ok(c) => Ok(Ok(c)),
        Err(CatalogError::Verification(msg)) => Ok(Err(msg)),
        Err(e) => Err(usage(e.to_string())),
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn list(json: bool) -> Outcome {
    let grid = CaseSpec::grid();
    if json {
        let rows: Vec<_> = grid
            .iter()
            .map(|s| {
                json!({
                    "case": s.family.id(),
                    "label": s.label(),
                    "l": s.l,
                    "r": s.r,
                    "settings": s.settings().iter().map(|x| x.as_str()).collect::<Vec<_>>(),
                })
            })
            .collect();
        print_json(&rows);
    } else {
        for s in &grid {
            let settings: Vec<&str> = s.settings().iter().map(|x| x.as_str()).collect();
            let r = s.r.map(|r| format!(" --r {r}")).unwrap_or_default();
            let flags = format!("--case {} --l {}{r}", s.family.id(), s.l);
            println!("{:22} {flags:34} settings: {}", s.label(), settings.join(", "));
        }
    }
    Ok(true)
}

fn verify(args: &CaseArgs, json: bool) -> Outcome {
    let case = match instance(args)? {
        Ok(c) => c,
        Err(msg) => {
            if json {
                print_json(&json!({ "pass": false, "failures": [msg] }));
            } else {
                println!("FAIL {msg}");
            }
            return Ok(false);
        }
    };
    let report = verify_case(&case);
    if json {
        print_json(&report);
    } else {
        print_case_report(&report);
    }
    Ok(report.pass)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok  "
    } else {
        "FAIL"
    }
}

fn print_case_report(r: &CaseReport) {
    println!("{}", r.case);
    for s in &r.sequences {
        let tag = if s.auxiliary { " (auxiliary)" } else { "" };
        println!(
            "  {} {}{tag}: exact={} inertia={} left-exact={}",
            mark(s.exact.pass && s.inertia_exact && s.left_exact),
            s.name,
            s.exact.pass,
            s.inertia_exact,
            s.left_exact
        );
    }
    for f in &r.factors {
        println!("  {} term {} of {} is {}", mark(f.verdict.is_isomorphic()), f.term, f.sequence, f.slot);
    }
    for d in &r.direct_sums {
        println!("  {} {} = {}", mark(d.verdict.is_isomorphic()), d.whole, d.parts.join(" ⊕ "));
    }
    if !r.transposition_dims.is_empty() {
        println!("  transposition invariants: {:?}", r.transposition_dims);
    }
    if !r.multiplicities.is_empty() {
        println!("  {} multiplicities {:?}", mark(r.multiplicities_ok), r.multiplicities);
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
    println!("{}", if r.pass { "PASS" } else { "FAIL" });
}

fn derive(args: &CaseArgs, level: Level, json: bool) -> Outcome {
    let case = match instance(args)? {
        Ok(c) => c,
        Err(msg) => return Err(usage(format!("case does not verify: {msg}"))),
    };
    let report = derive_report(&case, level).map_err(|e| usage(e.to_string()))?;
    if json {
        print_json(&report);
    } else {
        print_bound(&report);
    }
    Ok(true)
}

fn print_bound(r: &BoundReport) {
    let params = match r.params.r {
        Some(q) => format!("(l={}, r={q})", r.params.l),
        None => format!("(l={})", r.params.l),
    };
    println!("{} {params} / {} at level {}", r.case, r.setting, r.level);
    println!("  {} ≥ {}", r.objective, r.lower);
    println!("  {} ≤ {}", r.objective, r.upper);
    println!("  with x = {}", r.parameter);
    let extra = |v: &[reflectlab_core::boundsolver::Affine], main| {
        v.iter().filter(|f| *f != main).map(ToString::to_string).collect::<Vec<_>>()
    };
    let lo = extra(&r.lower_facets, &r.lower);
    if !lo.is_empty() {
        println!("  further lower facets: {}", lo.join("; "));
    }
    let up = extra(&r.upper_facets, &r.upper);
    if !up.is_empty() {
        println!("  further upper facets: {}", up.join("; "));
    }
    if let Some(t) = &r.paper_target {
        println!("  published: {}", t.statement);
    }
    if let Some(i) = r.implies_paper {
        println!("  implies published bound: {i}");
    }
    for w in &r.windows {
        println!(
            "  {} window: derived [{}, {}] within published [{}, {}]: {}",
            w.closure, w.derived.lower, w.derived.upper, w.published.lower, w.published.upper, w.contained
        );
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
}

fn check(args: &CaseArgs, data: PathBuf, json: bool) -> Outcome {
    let case = match instance(args)? {
        Ok(c) => c,
        Err(msg) => return Err(usage(format!("case does not verify: {msg}"))),
    };
    let parsed = parse_records(&data).map_err(|e| usage(e.to_string()))?;
    for e in &parsed.errors {
        eprintln!("{}:{}: {}", data.display(), e.line, e.message);
    }
    let pairing = pair_resolvents(&parsed.records);
    let mut reports = check_pairs(&pairing.pairs, &case).map_err(|e| usage(e.to_string()))?;
    reports.extend(pairing.unpaired.iter().map(|u| PairReport::unpaired(u, case.spec.l)));
    let summary = CheckSummary::of(&reports);
    if json {
        print_json(&json!({
            "case": case.id(),
            "summary": summary,
            "rejected_lines": parsed.errors,
            "pairs": reports,
        }));
    } else {
        for r in &reports {
            let bounds = match (&r.lower, &r.upper) {
                (Some(lo), Some(hi)) => format!("[{lo}, {hi}]"),
                _ => String::new(),
            };
            let ranks = match (r.rk1, r.rk2) {
                (Some(a), Some(b)) => format!("rk1={a} rk2={b}"),
                _ => String::new(),
            };
            let verdict = match r.verdict {
                Verdict::Pass => "pass".to_string(),
                Verdict::Fail => "FAIL".to_string(),
                Verdict::Skipped(why) => format!("skipped: {}", why.describe()),
            };
            println!("{:14} {:14} {ranks:12} {bounds:16} {verdict}", r.k1, r.k2);
        }
        println!(
            "{} pass, {} fail, {} skipped, {} rejected lines",
            summary.pass,
            summary.fail,
            summary.skipped,
            parsed.errors.len()
        );
    }
    Ok(summary.fail == 0)
}

fn fetch(source: String, galois: &str, degree: u32, disc_max: Option<u64>, limit: usize, out: PathBuf) -> Outcome {
    let family = Family::from_id(galois)
        .ok_or_else(|| usage(format!("unknown Galois tag `{galois}` (S3, S4, A4, D2l, SemiDirect)")))?;
    let query = FetchQuery {
        galois: family,
        degree,
        disc_max,
        limit,
    };
    let cache = FileCache::from_env(".reflectlab-cache");
    let mut transport = http::HttpTransport::new().map_err(usage)?;
    match fetch_remote(&query, &source, &out, &mut transport, &cache) {
        Ok(m) => {
            println!(
                "{} records written to {} ({} requests, {} from cache, {} rows skipped)",
                m.records,
                out.display(),
                m.requests.len(),
                m.served_from_cache,
                m.skipped.len()
            );
            Ok(true)
        }
        Err(e) => Err(usage(e.to_string())),
    }
}
