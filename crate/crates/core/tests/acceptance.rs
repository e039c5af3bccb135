//! Acceptance suite: one PASS/FAIL line per criterion. Conjecture failures are
//! reported with the line but do not fail it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use qcong::cases::{
    batches, identity_instances, scan, scan_grids, CaseKind, Profile, Registry, Report, Verdict, VerifyOptions,
};
use qcong::qpoly::{cyclotomic, LaurentPoly};
use qcong::transforms::{six_phi_five_mod_square, IdentityInstance, DEFAULT_ORDER};

struct Suite {
    reg: Registry,
    runs: BTreeMap<String, (Vec<Report>, Duration)>,
    failed: usize,
}

impl Suite {
    fn reports(&self, ids: &[&str]) -> Vec<&Report> {
        ids.iter().flat_map(|id| self.runs[*id].0.iter()).collect()
    }

    fn time(&self, ids: &[&str]) -> Duration {
        ids.iter().map(|id| self.runs[*id].1).sum()
    }

    fn line(&mut self, n: u32, title: &str, ok: bool, note: String) {
        if !ok {
            self.failed += 1;
        }
        println!("criterion {n:>2} {}: {title}: {note}", if ok { "PASS" } else { "FAIL" });
    }
}

fn describe(r: &Report) -> String {
    let p: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}({}) {}", r.case, p.join(","), r.verdict)
}

/// All points hold; the note counts them per case and names the first offender.
fn all_hold(suite: &Suite, ids: &[&str]) -> (bool, String) {
    let reports = suite.reports(ids);
    let bad: Vec<&&Report> = reports.iter().filter(|r| r.verdict != Verdict::Holds).collect();
    let counts: Vec<String> = ids.iter().map(|id| format!("{id} {}", suite.runs[*id].0.len())).collect();
    let mut note = format!("{} points hold ({})", reports.len() - bad.len(), counts.join(", "));
    if let Some(first) = bad.first() {
        note = format!("{} of {} fail, first {}", bad.len(), reports.len(), describe(first));
    }
    let nonempty = ids.iter().all(|id| !suite.runs[*id].0.is_empty());
    (bad.is_empty() && nonempty, note)
}

fn within(t: Duration, limit: f64) -> (bool, String) {
    (t.as_secs_f64() < limit, format!("{:.2} s of {limit} s", t.as_secs_f64()))
}

/// Conjecture points: every point must get a verdict; failures are listed, not fatal.
fn flagged(suite: &Suite, ids: &[&str]) -> (bool, String) {
    let reports = suite.reports(ids);
    let holds = reports.iter().filter(|r| r.verdict == Verdict::Holds).count();
    let failures: Vec<String> = reports.iter().filter(|r| r.conjecture_failure()).map(|r| describe(r)).collect();
    let decided = reports.iter().all(|r| r.verdict != Verdict::Inadmissible);
    let mut note = format!("{holds} of {} points hold", reports.len());
    if !failures.is_empty() {
        note += &format!("; conjecture failures flagged: {}", failures.join(", "));
    }
    (decided && !reports.is_empty(), note)
}

fn main() {
    let reg = Registry::builtin();
    let opts = VerifyOptions { oracle: true, precision: 60, expand: false };
    let mut runs = BTreeMap::new();
    for b in batches(&reg, Profile::Quick) {
        let start = Instant::now();
        let reports = reg.verify_points(&b.case, b.points, &opts).expect("profile points verify");
        runs.insert(b.case, (reports, start.elapsed()));
    }
    let mut s = Suite { reg, runs, failed: 0 };

    let ids = ["T1a", "T1b", "CF1", "CF2"];
    let (ok, note) = all_hold(&s, &ids);
    let (fast, t) = within(s.time(&ids), 5.0);
    let sizes = ids.iter().all(|id| s.runs[*id].0.len() == 15);
    s.line(1, "T1a, T1b and closed forms CF1, CF2 for odd 3 ≤ n ≤ 31", ok && fast && sizes, format!("{note}; {t}"));

    let (ok, note) = all_hold(&s, &["T1a-half", "T1b-half"]);
    s.line(2, "half-range congruences for odd 3 ≤ n ≤ 31", ok, note);

    let (ok, note) = all_hold(&s, &["T2", "T3"]);
    let (fast, t) = within(s.time(&["T2", "T3"]), 60.0);
    s.line(3, "T2, T3 mod Φ_n² for d ∈ {4, 6, 8}, n ≤ 49", ok && fast, format!("{note}; {t}"));

    let (ok, note) = all_hold(&s, &["T4", "antisymmetry", "truncation", "ratio"]);
    // where T4 holds mod Φ_n²Φ_{dn-n}, the weaker T2 statement must hold too
    let mut implied = 0;
    let mut consistent = true;
    for r in &s.runs["T4"].0 {
        if s.reg.get("T2").unwrap().admissible(&r.params).is_ok() {
            let t2 = s.reg.verify_case("T2", &r.params, &VerifyOptions { oracle: false, ..opts }).unwrap();
            consistent &= t2.verdict == Verdict::Holds || r.verdict != Verdict::Holds;
            implied += 1;
        }
    }
    s.line(
        4,
        "T4 mod Φ_n²Φ_{dn-n} for d ∈ {4..7}, n ≤ 29, with the antisymmetry, truncation and ratio invariants",
        ok && consistent,
        format!("{note}; T4 ⟹ T2 consistent on {implied} shared points"),
    );

    let (ok, note) = all_hold(&s, &["T5"]);
    let boundary = s.runs["T5"].0.iter().filter(|r| r.params["n"] == r.params["d"] - r.params["r"]).count();
    s.line(5, "T5 for d ∈ {4, 6}, r ∈ {1, 3, 5, -1}, n ≤ 35", ok && boundary > 0, format!("{note}; {boundary} boundary points n = d - r"));

    let (ok, note) = all_hold(&s, &["T6"]);
    s.line(6, "T6 for d ∈ {5, 7}, r ∈ {2, 4}, odd n ≤ 33", ok, note);

    let (ok, note) = all_hold(&s, &["T7"]);
    s.line(7, "T7 mod Φ_n²Φ_{dn-n} for d ∈ {3, 4, 5}, n ≤ 31", ok, note);

    let (ok, note) = all_hold(&s, &["ODD1", "ODD2"]);
    s.line(8, "prior odd-d results, both branches, d ∈ {5, 7}, n ≤ 29", ok, note);

    let ids = ["E2p2k", "SUN5", "C5", "GAO"];
    let (ok, note) = all_hold(&s, &ids);
    let (fast, t) = within(s.time(&ids), 10.0);
    let valued = s.reports(&ids).iter().all(|r| r.detail.valuation.is_some());
    let covered = [5, 7, 11, 13].iter().all(|&p| ids.iter().all(|id| s.runs[*id].0.iter().any(|r| r.params["p"] == p)));
    let sun3 = s.runs["SUN5"].0.iter().any(|r| r.params["p"] == 3 && r.verdict == Verdict::Holds);
    let gao_c5 = s.runs["GAO"].0.iter().all(|g| {
        g.verdict != Verdict::Holds
            || s.runs["C5"].0.iter().any(|c| c.params["p"] == g.params["p"] && c.verdict == Verdict::Holds)
    });
    s.line(
        9,
        "integer supercongruences for p ∈ {5, 7, 11, 13}, SUN5 at p = 3",
        ok && fast && valued && covered && sun3 && gao_c5,
        format!("{note}; exact valuations recorded; GAO ⟹ C5 consistent; {t}"),
    );

    let (ok, note) = flagged(&s, &["CONJ-A", "CONJ-B", "CONJ-C"]);
    s.line(10, "integer conjectures (flagged, not fatal)", ok, note);

    let ids = ["QCONJ-1", "QCONJ-2", "QCONJ-3", "QCONJ-4"];
    let (ok, note) = flagged(&s, &ids);
    let (fast, t) = within(s.time(&ids), 120.0);
    s.line(11, "q-conjectures (flagged, not fatal)", ok && fast, format!("{note}; {t}"));

    let grids = scan_grids(Profile::Quick);
    let bad = scan(&grids[0]).unwrap();
    let good = scan(&grids[1]).unwrap();
    s.line(
        12,
        "counterexample scan new-d, d = 5, r = 3, Φ_n², n ≤ 27",
        !bad.failures.is_empty() && good.failures.is_empty(),
        format!(
            "{} failures at n = {:?}; control d = 4, r = 1: {} failures in {} points",
            bad.failures.len(),
            bad.failures.iter().map(|p| p["n"]).collect::<Vec<_>>(),
            good.failures.len(),
            good.points.len()
        ),
    );

    let instances = identity_instances(Profile::Quick, DEFAULT_ORDER);
    let reports: Vec<Report> = instances.iter().map(IdentityInstance::report).collect();
    let count = |id: &str| reports.iter().filter(|r| r.case == id).count();
    let exact: Vec<&Report> = reports.iter().filter(|r| ["6phi5-term", "watson-8phi7", "andrews-m"].contains(&r.case.as_str())).collect();
    let andrews_ok = instances.iter().all(|i| match i {
        IdentityInstance::Andrews { b, n, .. } => (2..=3).contains(&b.len()) && *n <= 3,
        _ => true,
    });
    s.line(
        13,
        "6phi5, Watson and Andrews transformations on seeded random instances",
        exact.iter().all(|r| r.verdict == Verdict::Holds)
            && count("6phi5-term") == 10
            && count("watson-8phi7") == 10
            && count("andrews-m") == 5
            && andrews_ok,
        format!("{} exact equalities", exact.iter().filter(|r| r.verdict == Verdict::Holds).count()),
    );

    let series: Vec<&Report> = reports.iter().filter(|r| r.kind == CaseKind::Identity && !exact.contains(r)).collect();
    s.line(
        14,
        "series identities rdid (r = ±1), sun-euler and two rogers-6phi5 to q^100",
        series.len() == 5 && series.iter().all(|r| r.verdict == Verdict::Holds),
        series.iter().map(|r| describe(r)).collect::<Vec<_>>().join(", "),
    );

    let ids = ["T1a", "T1b", "T1a-half", "T1b-half", "T2", "T3", "T4", "T5", "T6", "T7", "ODD1", "ODD2"];
    let q: Vec<&Report> = s.reports(&ids).into_iter().filter(|r| r.kind == CaseKind::QCongruence).collect();
    let agree = q.iter().filter(|r| r.detail.oracle.as_deref() == Some("agrees")).count();
    s.line(15, "numeric oracle at 60 digits agrees on every q-congruence point", agree == q.len() && !q.is_empty(), format!("{agree} of {} points", q.len()));

    let cyclo = (1..=60i64).all(|n| {
        let mut prod = LaurentPoly::one();
        for d in (1..=n).filter(|d| n % d == 0) {
            prod *= &cyclotomic(d as u64).unwrap();
        }
        prod == -LaurentPoly::one_minus_q_pow(n)
    });
    let mut square = 0;
    let mut square_ok = true;
    for r in (-7i64..=7).step_by(2) {
        for n in (3..=19).step_by(2) {
            if (n + r).rem_euclid(4) == 0 && n >= r.max(4 - r) {
                square_ok &= six_phi_five_mod_square(r, n).unwrap();
                square += 1;
            }
        }
    }
    let (props, note) = all_hold(&s, &["lemma-1", "qbinomial", "negq", "negq-half"]);
    s.line(
        16,
        "property suites: cyclotomic products, mod-square grid, lemma-1, q-binomial and (-q;q) congruences",
        cyclo && square_ok && props,
        format!("∏_{{d|n}} Φ_d = q^n - 1 for n ≤ 60: {cyclo}; mod-square {square} points: {square_ok}; {note}"),
    );

    println!("{} of 16 criteria pass", 16 - s.failed);
    if s.failed > 0 {
        std::process::exit(1);
    }
}
