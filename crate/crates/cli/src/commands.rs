//! The subcommands. Each returns the process exit status; `Err` is a usage or configuration error.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use qcong::cases::{
    batches, grid_points, identity_instances, load_custom_cases, parse_range, scan, scan_grids, Detail, Params, Registry,
    Report, ScanFamily, ScanGrid, Verdict, VerifyOptions,
};
use qcong::transforms::{random_instances, IdentityId, IdentityInstance};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{report_name, summary_line, table, write_report, RunConfig, RunReport};
use crate::{Cli, Command, Switch};

type CmdResult = Result<u8, String>;

pub fn registry(cli: &Cli) -> Result<Registry, String> {
    registry_with(cli.cases.as_deref())
}

fn registry_with(cases: Option<&Path>) -> Result<Registry, String> {
    let mut reg = Registry::builtin();
    if let Some(path) = cases {
        for case in load_custom_cases(path).map_err(|e| e.to_string())? {
            reg.register(case.into_case_def());
        }
    }
    Ok(reg)
}

/// Parameter names of `case`, empty when it is unknown (reported later).
pub fn case_params(cases: Option<&Path>, case: &str) -> Vec<String> {
    registry_with(cases).ok().and_then(|r| r.get(case).ok().map(|c| c.params.clone())).unwrap_or_default()
}

fn options(cli: &Cli) -> VerifyOptions {
    VerifyOptions { oracle: cli.oracle == Switch::On, precision: cli.precision, expand: cli.expand }
}

fn config(cli: &Cli, command: &str, selector: Option<String>) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        selector,
        format: if cli.json { "json" } else { "text" }.to_string(),
        report_dir: cli.out.as_ref().map(|p| p.display().to_string()),
        workers: rayon::current_num_threads(),
        oracle: cli.oracle == Switch::On,
        precision: cli.precision,
        cases_file: cli.cases.as_ref().map(|p| p.display().to_string()),
        ..RunConfig::default()
    }
}

fn save(cli: &Cli, report: &RunReport) -> Result<(), String> {
    if let Some(dir) = &cli.out {
        let name = report_name(&report.run.config.command, report.run.config.selector.as_deref());
        write_report(dir, &name, report).map_err(|e| format!("cannot write report to {}: {e}", dir.display()))?;
    }
    Ok(())
}

/// Saves the final report and prints it.
fn finish(cli: &Cli, report: &mut RunReport, start: Instant, text: impl FnOnce(&RunReport) -> String) -> Result<(), String> {
    report.partial = false;
    report.timing.total_millis = start.elapsed().as_millis() as u64;
    save(cli, report)?;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", text(report));
        println!("{}", summary_line(&report.summary));
    }
    Ok(())
}

fn status(report: &RunReport) -> u8 {
    u8::from(report.theorem_failures() > 0)
}

pub fn run(cli: &Cli, params: Vec<(String, String)>) -> CmdResult {
    match &cli.command {
        Command::Verify { case, .. } => verify(cli, case, params),
        Command::VerifyAll { profile } => verify_all(cli, *profile),
        Command::Scan { family, d, r, n, n_max, power } => cmd_scan(cli, family, d, r, n.as_deref(), *n_max, *power),
        Command::SeriesCheck { id, .. } => series_check(cli, id),
        Command::ListCases => list_cases(cli),
    }
}

/// Verifies `points` of one case in parallel; engine errors become `undefined` results.
fn verify_points(reg: &Registry, id: &str, points: &[Params], opts: &VerifyOptions) -> Result<Vec<Report>, String> {
    let case = reg.get(id).map_err(|e| e.to_string())?;
    Ok(points
        .par_iter()
        .map(|p| {
            reg.verify_case(id, p, opts).unwrap_or_else(|e| Report {
                case: case.id.clone(),
                params: p.clone(),
                kind: case.kind,
                verdict: Verdict::Undefined,
                detail: Detail { reason: Some(e.to_string()), conjecture: case.conjecture, ..Detail::default() },
                millis: 0,
            })
        })
        .collect())
}

fn verify(cli: &Cli, id: &str, params: Vec<(String, String)>) -> CmdResult {
    let start = Instant::now();
    let reg = registry(cli)?;
    let case = reg.get(id).map_err(|e| format!("{e}; `qcong list-cases` shows the registered ids"))?;
    let mut ranges = BTreeMap::new();
    for (name, text) in &params {
        ranges.insert(name.clone(), parse_range(text).map_err(|e| format!("--{name}: {e}"))?);
    }
    let missing: Vec<_> = case.params.iter().filter(|p| !ranges.contains_key(*p)).map(|p| format!("--{p}")).collect();
    if !missing.is_empty() {
        return Err(format!("case {id} needs {}", missing.join(" ")));
    }
    let mut cfg = config(cli, "verify", Some(id.to_string()));
    cfg.ranges = params.into_iter().collect();
    let mut report = RunReport::new(cfg);
    report.extend(verify_points(&reg, id, &grid_points(&ranges), &options(cli))?);
    finish(cli, &mut report, start, |r| table(&r.results, Some(&r.timing.results_millis)))?;
    if report.all_inadmissible() {
        eprintln!("error: every point is inadmissible for {id} ({})", case.conditions);
        return Ok(2);
    }
    Ok(status(&report))
}

fn verify_all(cli: &Cli, profile: qcong::cases::Profile) -> CmdResult {
    let start = Instant::now();
    let reg = registry(cli)?;
    let opts = options(cli);
    let mut cfg = config(cli, "verify-all", Some(profile.to_string()));
    cfg.order = Some(cli.order);
    let mut report = RunReport::new(cfg);
    report.partial = true;
    let progress = |label: &str, reports: &[Report]| {
        if !cli.json {
            let holds = reports.iter().filter(|r| r.verdict == Verdict::Holds).count();
            println!("{label:<16} {:>4} points  {holds:>4} hold", reports.len());
            let bad: Vec<Report> = reports.iter().filter(|r| !matches!(r.verdict, Verdict::Holds)).cloned().collect();
            print!("{}", table(&bad, None));
        }
    };
    for batch in batches(&reg, profile) {
        let reports = verify_points(&reg, &batch.case, &batch.points, &opts)?;
        progress(&batch.case, &reports);
        report.extend(reports);
        save(cli, &report)?;
    }
    for grid in scan_grids(profile) {
        let s = scan(&grid).map_err(|e| e.to_string())?;
        let reports = s.reports();
        progress(&format!("scan {}", grid.family), &reports);
        report.extend(reports);
        save(cli, &report)?;
    }
    let instances = identity_instances(profile, cli.order);
    let reports: Vec<Report> = instances.par_iter().map(IdentityInstance::report).collect();
    progress("identities", &reports);
    report.extend(reports);
    finish(cli, &mut report, start, |_| String::new())?;
    Ok(status(&report))
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(cli: &Cli, family: &str, d: &str, r: &str, n: Option<&str>, n_max: Option<i64>, power: u32) -> CmdResult {
    let start = Instant::now();
    let fam: ScanFamily = family.parse().map_err(|e: qcong::Error| e.to_string())?;
    let ds = parse_range(d).map_err(|e| format!("--d: {e}"))?;
    let rs = parse_range(r).map_err(|e| format!("--r: {e}"))?;
    let mut cfg = config(cli, "scan", Some(family.to_string()));
    cfg.power = Some(power);
    cfg.ranges.insert("d".into(), d.into());
    cfg.ranges.insert("r".into(), r.into());
    let grid = match (n, n_max) {
        (Some(n), _) => {
            cfg.ranges.insert("n".into(), n.into());
            ScanGrid { family: fam, d: ds, r: rs, n: parse_range(n).map_err(|e| format!("--n: {e}"))?, power }
        }
        (None, Some(max)) => {
            cfg.ranges.insert("n-max".into(), max.to_string());
            ScanGrid::admissible_up_to(fam, ds, rs, max, power)
        }
        (None, None) => return Err("scan needs --n RANGE or --n-max N".into()),
    };
    let result = scan(&grid).map_err(|e| e.to_string())?;
    let mut report = RunReport::new(cfg);
    report.extend(result.reports());
    finish(cli, &mut report, start, |r| {
        let fails: Vec<Report> = r.results.iter().filter(|x| x.verdict == Verdict::Fails).cloned().collect();
        let mut out = format!("{} failures\n", fails.len());
        out += &table(&fails, None);
        out += "\n";
        out += &table(&r.results, Some(&r.timing.results_millis));
        out
    })?;
    Ok(0)
}

fn need(v: Option<i64>, flag: &str, id: IdentityId) -> Result<i64, String> {
    v.ok_or_else(|| format!("{id} needs --{flag} (or --random COUNT)"))
}

fn single(v: &[i64], flag: &str, id: IdentityId) -> Result<i64, String> {
    match v {
        [x] => Ok(*x),
        [] => Err(format!("{id} needs --{flag} (or --random COUNT)")),
        _ => Err(format!("{id} takes a single value for --{flag}")),
    }
}

fn with_order(inst: IdentityInstance, t: i64) -> IdentityInstance {
    match inst {
        IdentityInstance::Rogers { a, b, c, d, base, .. } => IdentityInstance::Rogers { a, b, c, d, base, order: t },
        IdentityInstance::Rdid { r, .. } => IdentityInstance::Rdid { r, order: t },
        IdentityInstance::SunEuler { .. } => IdentityInstance::SunEuler { order: t },
        other => other,
    }
}

fn instances(cli: &Cli, id: IdentityId) -> Result<Vec<IdentityInstance>, String> {
    let Command::SeriesCheck { r, a, b, c, d, e, n, base, random, seed, .. } = &cli.command else {
        unreachable!("called for series-check only")
    };
    if let Some(count) = random {
        return Ok(random_instances(id, *count, *seed).into_iter().map(|i| with_order(i, cli.order)).collect());
    }
    let s = base.unwrap_or(1);
    let order = cli.order;
    let inst = match id {
        IdentityId::SixPhiFiveTerminating => IdentityInstance::SixPhiFive {
            a: need(*a, "a", id)?,
            b: single(b, "b", id)?,
            c: single(c, "c", id)?,
            n: need(*n, "n", id)?,
            base: s,
        },
        IdentityId::Watson => IdentityInstance::Watson {
            a: need(*a, "a", id)?,
            b: single(b, "b", id)?,
            c: single(c, "c", id)?,
            d: need(*d, "d", id)?,
            e: need(*e, "e", id)?,
            n: need(*n, "n", id)?,
            base: s,
        },
        IdentityId::Andrews => {
            if b.is_empty() || b.len() != c.len() {
                return Err(format!("{id} needs --b and --c lists of equal, nonzero length"));
            }
            IdentityInstance::Andrews { a: need(*a, "a", id)?, b: b.clone(), c: c.clone(), n: need(*n, "n", id)?, base: s }
        }
        IdentityId::Rogers => IdentityInstance::Rogers {
            a: need(*a, "a", id)?,
            b: single(b, "b", id)?,
            c: single(c, "c", id)?,
            d: need(*d, "d", id)?,
            base: s,
            order,
        },
        IdentityId::Rdid => IdentityInstance::Rdid { r: need(*r, "r", id)?, order },
        IdentityId::SunEuler => IdentityInstance::SunEuler { order },
    };
    Ok(vec![inst])
}

fn series_check(cli: &Cli, id: &str) -> CmdResult {
    let start = Instant::now();
    let ident: IdentityId = id.parse().map_err(|e: qcong::Error| e.to_string())?;
    let list = instances(cli, ident)?;
    let mut cfg = config(cli, "series-check", Some(id.to_string()));
    cfg.order = ident.is_series().then_some(cli.order);
    if let Some(first) = list.first().filter(|_| list.len() == 1) {
        cfg.ranges = first.params().into_iter().map(|(k, v)| (k, v.to_string())).collect();
    }
    let mut report = RunReport::new(cfg);
    report.extend(list.par_iter().map(IdentityInstance::report).collect::<Vec<_>>());
    finish(cli, &mut report, start, |r| table(&r.results, Some(&r.timing.results_millis)))?;
    if let Some(bad) = report.results.iter().find(|r| r.verdict == Verdict::Inadmissible) {
        eprintln!("error: rejected: {}", bad.detail.reason.as_deref().unwrap_or("inadmissible parameters"));
        return Ok(2);
    }
    Ok(status(&report))
}

#[derive(Serialize)]
struct CaseEntry<'a> {
    id: &'a str,
    kind: String,
    conjecture: bool,
    params: &'a [String],
    conditions: &'a str,
    statement: &'a str,
}

#[derive(Serialize)]
struct IdentityEntry {
    id: &'static str,
    series: bool,
    description: &'static str,
}

fn list_cases(cli: &Cli) -> CmdResult {
    let reg = registry(cli)?;
    let cases: Vec<CaseEntry> = reg
        .cases()
        .iter()
        .map(|c| CaseEntry {
            id: &c.id,
            kind: c.kind.to_string(),
            conjecture: c.conjecture,
            params: &c.params,
            conditions: &c.conditions,
            statement: &c.statement,
        })
        .collect();
    let identities: Vec<IdentityEntry> = IdentityId::ALL
        .iter()
        .map(|&i| IdentityEntry { id: i.as_str(), series: i.is_series(), description: i.description() })
        .collect();
    let families = ["new-d", "new-odd"];
    if cli.json {
        let doc = serde_json::json!({ "cases": cases, "identities": identities, "scan_families": families });
        println!("{}", serde_json::to_string_pretty(&doc).expect("listing serializes"));
        return Ok(0);
    }
    println!("cases:");
    for c in &cases {
        let tag = if c.conjecture { " [conjecture]" } else { "" };
        println!("  {:<14} {:<18} {:<12} {}{tag}", c.id, c.kind, c.params.join(","), c.conditions);
    }
    println!("identities:");
    for i in &identities {
        println!("  {:<14} {}", i.id, i.description);
    }
    println!("scan families: {}", families.join(", "));
    Ok(0)
}
