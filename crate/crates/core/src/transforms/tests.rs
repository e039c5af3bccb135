use super::*;
use crate::qpoly::infinite_pochhammer_series;

#[test]
fn trivial_lengths() {
    assert!(check_6phi5_terminating(3, 1, 2, 0, 1).unwrap());
    assert!(check_watson_8phi7(3, 1, 2, 5, -1, 0, 2).unwrap());
    assert!(check_andrews(1, 2, &[1], &[3], 0, 1).unwrap());
}

#[test]
fn six_phi_five_examples() {
    // q -> q^4, a = b = q, c = q^{1+9}, n = (9-1)/4
    assert!(check_6phi5_terminating(1, 1, 10, 2, 4).unwrap());
    for (a, b, c) in [(1, 2, -2), (3, -1, 2), (-3, 2, 4), (5, 0, 4)] {
        assert!(check_6phi5_terminating(a, b, c, 3, 2).unwrap(), "{a} {b} {c}");
    }
    assert!(matches!(check_6phi5_terminating(0, 1, 1, 2, 1), Err(Error::VanishingDenominator(_))));
    // aq/b = q^0 makes (aq/b; q)_n vanish
    assert!(matches!(check_6phi5_terminating(1, 2, 5, 2, 1), Err(Error::VanishingDenominator(_))));
}

#[test]
fn wrong_argument_is_detected() {
    let (a, b, c, n, s) = (3, 1, 2, 3, 1);
    let rhs = poch_ratio(&[a + s, a + s - b - c], &[a + s - b, a + s - c], s, n).unwrap();
    let z = a + s * (n + 1) - b - c;
    assert_eq!(vwp_terminating(a, &[b, c, -s * n], z, s, n).unwrap(), rhs);
    assert_ne!(vwp_terminating(a, &[b, c, -s * n], z + 1, s, n).unwrap(), rhs);
    assert_ne!(vwp_terminating(a, &[b, c, -s * n], z, s, n - 1).unwrap(), rhs);
}

#[test]
fn watson_examples() {
    assert!(check_watson_8phi7(1, 1, 1, 1, 1, 1, 4).unwrap());
    for (a, b, c, d, e) in [(2, 1, 3, -1, 2), (5, 2, 2, 1, 0), (-1, 2, 4, -2, 6)] {
        assert!(check_watson_8phi7(a, b, c, d, e, 2, 2).unwrap(), "{a} {b} {c} {d} {e}");
    }
}

#[test]
fn andrews_reduces_to_known_formulas() {
    for (a, b, c, n, s) in [(3, 1, 2, 3, 1), (1, 1, 10, 2, 4), (-3, 2, 4, 2, 2)] {
        assert_eq!(check_andrews(1, a, &[b], &[c], n, s).unwrap(), check_6phi5_terminating(a, b, c, n, s).unwrap());
        assert!(check_andrews(1, a, &[b], &[c], n, s).unwrap());
    }
    for (a, b, c, d, e, n, s) in [(2, 1, 3, -1, 2, 2, 2), (1, 1, 1, 1, 1, 1, 4), (5, 2, 2, 1, 0, 3, 1)] {
        assert_eq!(andrews_lhs(a, &[b, d], &[c, e], n, s).unwrap(), watson_lhs(a, b, c, d, e, n, s).unwrap());
        assert_eq!(check_andrews(2, a, &[b, d], &[c, e], n, s).unwrap(), check_watson_8phi7(a, b, c, d, e, n, s).unwrap());
    }
}

#[test]
fn andrews_theorem_five_specialization() {
    // q -> q^6, a = b_1 = c_1 = b_2 = q, c_2 = q^{1+25}, N = (25-1)/6
    assert!(check_andrews(2, 1, &[1, 1], &[1, 26], 4, 6).unwrap());
    assert!(check_andrews(3, 5, &[1, 2, -1], &[2, 1, 3], 1, 1).unwrap());
    assert!(check_andrews(3, 3, &[1, 2, 2], &[2, 1, 1], 2, 1).unwrap());
}

#[test]
fn random_instances_hold_and_are_reproducible() {
    for id in [IdentityId::SixPhiFiveTerminating, IdentityId::Watson, IdentityId::Andrews] {
        let a = random_instances(id, 6, 7);
        assert_eq!(a.len(), 6);
        assert_eq!(a, random_instances(id, 6, 7));
        for inst in &a {
            assert_eq!(inst.id(), id);
            assert!(inst.check().unwrap(), "{inst:?}");
        }
    }
}

#[test]
fn infinite_products_match_the_formal_ones() {
    let p = infinite_pochhammer_series(1, 1, 5).unwrap();
    assert_eq!(p.to_poly(), LaurentPoly::from_coeffs(0, &[1, -1, -1, 0, 0, 1]));
    for (a, d) in [(1, 1), (3, 4), (2, 3)] {
        assert!(infinite_product(minus(a), d, 30).matches_to(&infinite_pochhammer_series(a, d, 30).unwrap(), 30));
    }
    // (q^{-1}; q^2)_∞ = (1 - q^{-1}) (q; q^2)_∞
    let lhs = infinite_product(minus(-1), 2, 30);
    let rhs = infinite_pochhammer_series(1, 2, 31).unwrap().mul_poly(&LaurentPoly::one_minus_q_pow(-1));
    assert!(lhs.matches_to(&rhs, 29));
}

/// Left side of the `r`-identity from individually built terms.
fn rdid_termwise(r: i64, order: i64) -> TruncatedSeries {
    let spec = TruncatedSumSpec::well_poised(
        BracketFactor { u: 8, v: r, s: 1 },
        r,
        4,
        4,
        QPowerFactor::linear(4 - 2 * r),
        order,
    );
    let mut total = TruncatedSeries::zero(order);
    for k in 0..=order / (4 - 2 * r) + 2 {
        total = total.add(&series_of(&spec.term(k).unwrap(), order).unwrap());
    }
    total
}

#[test]
fn series_identities() {
    for r in [1, -1] {
        let pair = rdid_series(r, DEFAULT_ORDER).unwrap();
        assert!(pair.outcome(DEFAULT_ORDER).unwrap().holds, "r = {r}");
        assert!(pair.lhs.matches_to(&rdid_termwise(r, 30), 30));
    }
    assert_eq!(rdid_series(-1, 10).unwrap().lhs.valuation(), -1);
    assert!(matches!(rdid_series(3, 100), Err(Error::Inadmissible(_))));
    assert!(IdentityInstance::SunEuler { order: DEFAULT_ORDER }.check().unwrap());
    assert!(check_rogers_6phi5_series(2, 1, 1, 1, 2, DEFAULT_ORDER).unwrap());
    assert!(check_rogers_6phi5_series(1, 1, 1, 1, 4, DEFAULT_ORDER).unwrap());
    assert!(check_rogers_6phi5_series(3, -1, 2, 1, 1, 60).unwrap());
    assert!(matches!(check_rogers_6phi5_series(1, 1, 1, 1, 1, 50), Err(Error::InvalidSpec(_))));
}

#[test]
fn more_rdid_values() {
    for r in [-3, -5, -7] {
        assert!(rdid_series(r, 60).unwrap().outcome(60).unwrap().holds, "r = {r}");
    }
}

#[test]
fn series_mismatch_is_located() {
    let mut pair = sun_euler_series(20).unwrap();
    pair.rhs = pair.rhs.add(&TruncatedSeries::from_poly(&LaurentPoly::q_pow(7), 20));
    assert_eq!(pair.outcome(20).unwrap().first_mismatch, Some(7));
}

#[test]
fn terminating_series_agree_with_exact_comparison() {
    for (a, b, c, n, s) in [(3, 1, 2, 3, 1), (1, 1, 10, 2, 4), (-3, 2, 4, 2, 2), (2, 5, -1, 2, 1)] {
        let exact = check_6phi5_terminating(a, b, c, n, s).unwrap();
        let (lhs, rhs) = terminating_6phi5_series(a, b, c, n, s, 60).unwrap();
        assert_eq!(lhs.matches_to(&rhs, 60), exact);
    }
}

#[test]
fn transformed_sum_modulo_square() {
    let mut checked = 0;
    for r in (-7i64..=7).step_by(2) {
        for n in (3..=19).step_by(2) {
            if (n + r).rem_euclid(4) == 0 && n >= r.max(4 - r) {
                assert!(six_phi_five_mod_square(r, n).unwrap(), "r = {r}, n = {n}");
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
    assert!(six_phi_five_mod_square(1, 5).is_err());
}

#[test]
fn identity_ids_round_trip() {
    for id in IdentityId::ALL {
        assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
    }
    assert!(matches!("8phi7".parse::<IdentityId>(), Err(Error::UnknownIdentity(_))));
    let inst = IdentityInstance::Rdid { r: 1, order: 100 };
    let json = serde_json::to_string(&inst).unwrap();
    assert_eq!(json, r#"{"identity":"rdid","r":1,"order":100}"#);
    assert_eq!(serde_json::from_str::<IdentityInstance>(&json).unwrap(), inst);
}

#[test]
fn instances_as_reports() {
    let r = IdentityInstance::Andrews { a: 1, b: vec![1, 1], c: vec![1, 26], n: 4, base: 6 }.report();
    assert_eq!(r.verdict, crate::cases::Verdict::Holds);
    assert_eq!(r.params["c2"], 26);
    assert_eq!(r.params["m"], 2);
    assert_eq!(IdentityInstance::Rdid { r: 3, order: 10 }.report().verdict, crate::cases::Verdict::Inadmissible);
    assert_eq!(IdentityInstance::SixPhiFive { a: 1, b: 2, c: 5, n: 2, base: 1 }.report().verdict, crate::cases::Verdict::Undefined);
}
