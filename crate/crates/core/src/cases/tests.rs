use super::*;
use crate::arith::parse_rational;

fn quick() -> VerifyOptions {
    VerifyOptions { oracle: false, ..VerifyOptions::default() }
}

fn holds(id: &str, p: Params) -> bool {
    let r = Registry::builtin().verify_case(id, &p, &VerifyOptions::default()).unwrap();
    assert_ne!(r.verdict, Verdict::Inadmissible, "{id} {p:?}: {:?}", r.detail.reason);
    assert_eq!(r.detail.oracle.as_deref(), if r.kind == CaseKind::QCongruence { Some("agrees") } else { None });
    r.verdict == Verdict::Holds
}

#[test]
fn registry_ids_are_unique_and_complete() {
    let reg = Registry::builtin();
    let ids: Vec<&str> = reg.ids().collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    for id in [
        "T1a", "T1b", "T1a-half", "T1b-half", "CF1", "CF2", "T2", "T3", "T4", "T5", "T6", "T7", "ODD1", "ODD2", "E2p2k",
        "SUN5", "C5", "GAO", "CONJ-A", "CONJ-B", "CONJ-C", "QCONJ-1", "QCONJ-2", "QCONJ-3", "QCONJ-4",
    ] {
        assert!(reg.get(id).is_ok(), "{id}");
    }
    assert!(matches!(reg.get("NOSUCH"), Err(Error::UnknownCase(_))));
}

#[test]
fn small_examples() {
    assert!(holds("T1a", params([("n", 3)])));
    assert!(holds("T1b", params([("n", 5)])));
    assert!(holds("T2", params([("d", 4), ("n", 3)])));
    assert!(holds("CF1", params([("n", 3)])));
    assert!(holds("CF2", params([("n", 4)])));
}

#[test]
fn corollary_at_three_reports_sum_and_valuation() {
    let r = verify_case("C5", &params([("p", 3)])).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert_eq!(r.detail.sum.as_deref(), Some("2673/524288"));
    assert_eq!(r.detail.valuation.as_deref(), Some("5"));
    assert_eq!(parse_rational(r.detail.sum.as_deref().unwrap()).unwrap(), integer::sun_sum(3, crate::arith::int));
}

#[test]
fn gao_fails_at_three_as_printed() {
    let target = crate::arith::rat(27, 4) - crate::arith::rat(81, 8);
    let v = crate::arith::padic_valuation(&(integer::sun_sum(3, crate::arith::int) - target), 3).unwrap();
    assert_eq!(v.finite(), Some(3));
    let r = verify_case("GAO", &params([("p", 3)])).unwrap();
    assert_eq!(r.verdict, Verdict::Inadmissible);
}

#[test]
fn inadmissible_points_name_the_condition() {
    let r = verify_case("T1a", &params([("n", 4)])).unwrap();
    assert_eq!(r.verdict, Verdict::Inadmissible);
    assert!(r.detail.reason.unwrap().contains("odd"));
    let r = verify_case("T5", &params([("d", 6), ("r", 3), ("n", 3)])).unwrap();
    assert!(r.detail.reason.unwrap().contains("gcd"));
    assert!(matches!(verify_case("T1a", &Params::new()), Err(Error::MissingParameter(_))));
    assert!(verify_case("T1a", &params([("n", 3), ("m", 1)])).is_err());
}

#[test]
fn stronger_modulus_is_not_claimed() {
    // Theorem 2 is sharp: Φ_n^3 generally fails
    let spec = invariants::well_poised_plus(4, 7);
    let v = crate::congruence::check_sum_congruence(&spec, &LaurentPoly::zero(), &ModulusSpec::new().cyclotomic(7, 3)).unwrap();
    assert!(!v.holds);
}

#[test]
fn verify_family_orders_and_skips() {
    let mut ranges = BTreeMap::new();
    ranges.insert("n".to_string(), vec![7, 3, 4, 5]);
    let reports = Registry::builtin().verify_family("T1a", &ranges, &quick()).unwrap();
    let ns: Vec<i64> = reports.iter().map(|r| r.params["n"]).collect();
    assert_eq!(ns, vec![7, 3, 4, 5]);
    let s = Summary::of(&reports);
    assert_eq!((s.checked, s.holds, s.inadmissible), (3, 3, 1));
}

#[test]
fn determinism() {
    let reg = Registry::builtin();
    for (id, p) in [("T4", params([("d", 5), ("n", 9)])), ("QCONJ-2", params([("p", 3)])), ("CONJ-C", params([("p", 5), ("r", 1)]))] {
        let a = reg.verify_case(id, &p, &VerifyOptions::default()).unwrap().untimed();
        let b = reg.verify_case(id, &p, &VerifyOptions::default()).unwrap().untimed();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn expansion_route_agrees() {
    let reg = Registry::builtin();
    let full = VerifyOptions { expand: true, ..quick() };
    for (id, p) in [
        ("T1b", params([("n", 9)])),
        ("T5", params([("d", 4), ("r", -1), ("n", 5)])),
        ("T6", params([("d", 5), ("r", 2), ("n", 3)])),
        ("QCONJ-4", params([("p", 5)])),
    ] {
        let a = reg.verify_case(id, &p, &quick()).unwrap();
        let b = reg.verify_case(id, &p, &full).unwrap();
        assert_eq!(a.untimed(), b.untimed(), "{id}");
        assert_eq!(a.verdict, Verdict::Holds, "{id}");
    }
}

#[test]
fn conjecture_failures_are_flagged() {
    let r = Report {
        case: "X".into(),
        params: Params::new(),
        kind: CaseKind::QCongruence,
        verdict: Verdict::Fails,
        detail: Detail { conjecture: true, ..Detail::default() },
        millis: 3,
    };
    assert!(r.conjecture_failure() && !r.theorem_failure());
    let s = Summary::of(&[r]);
    assert_eq!((s.fails, s.conjecture_failures), (1, 1));
}

#[test]
fn custom_case_round_trip() {
    let doc = r#"{"cases": [{
        "id": "my-t1a", "kind": "q-congruence", "params": ["n"],
        "bracket": {"u": 4, "v": 1, "s": 1},
        "pochhammers": [{"a": 1, "d": 2, "e": 2}, {"a": 2, "d": 2, "e": -2}],
        "qpower": {"alpha": "0", "beta": "-1"},
        "range": {"from": 0, "to": "n-1"},
        "rhs": [[1, "1"]], "rhs_bracket": [["n", 2]],
        "modulus": {"cyclotomic": [["n", 1]], "bracket": [["n", 2]]},
        "constraints": "odd(n), n > 1"
    }]}"#;
    let mut reg = Registry::builtin();
    for c in parse_custom_cases(doc).unwrap() {
        reg.register(c.into_case_def());
    }
    for n in [3, 4, 5, 9, 11] {
        let a = reg.verify_case("my-t1a", &params([("n", n)]), &quick()).unwrap();
        let b = reg.verify_case("T1a", &params([("n", n)]), &quick()).unwrap();
        assert_eq!(a.verdict, b.verdict, "n = {n}");
        assert_eq!(a.detail.factors, b.detail.factors);
    }
}

#[test]
fn scan_finds_the_counterexample() {
    let grid = ScanGrid::admissible_up_to(ScanFamily::NewD, vec![5], vec![3], 27, 2);
    let report = scan(&grid).unwrap();
    assert!(!report.failures.is_empty());
    let grid = ScanGrid::admissible_up_to(ScanFamily::NewD, vec![4], vec![1], 31, 2);
    let report = scan(&grid).unwrap();
    assert!(report.failures.is_empty());
    assert!(report.count(Verdict::Holds) > 5);
    let empty = ScanGrid { family: ScanFamily::NewD, d: vec![], r: vec![1], n: vec![3], power: 2 };
    assert!(scan(&empty).unwrap().points.is_empty());
}

#[test]
fn grid_points_cartesian() {
    let mut r = BTreeMap::new();
    r.insert("a".to_string(), vec![1, 2]);
    r.insert("b".to_string(), vec![3, 4, 5]);
    let pts = grid_points(&r);
    assert_eq!(pts.len(), 6);
    assert_eq!(pts[0], params([("a", 1), ("b", 3)]));
    assert_eq!(pts[5], params([("a", 2), ("b", 5)]));
    assert_eq!(grid_points(&BTreeMap::new()), vec![Params::new()]);
}

#[test]
fn fifth_power_q_conjecture_at_three() {
    // the prefactor vanishes at p = 3, and the sum carries Φ_3^4 but not Φ_3^5
    let r = verify_case("QCONJ-4", &params([("p", 3)])).unwrap();
    assert_eq!(r.verdict, Verdict::Fails);
    assert_eq!(r.detail.failing_factor, Some((3, 5)));
    assert!(r.conjecture_failure());
    assert!(holds("QCONJ-3", params([("n", 3)])));
}
