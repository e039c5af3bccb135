use proptest::prelude::*;

use super::*;
use crate::qpoly::cyclotomic;
use crate::qseries::{q_integer, BracketFactor, QPochhammerFactor, QPowerFactor};

fn t1a(n: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(BracketFactor { u: 4, v: 1, s: 1 }, 1, 2, 2, QPowerFactor::linear(-1), n - 1)
}

fn t1_modulus(n: u64) -> ModulusSpec {
    ModulusSpec::new().bracket(n, 2).cyclotomic(n, 1)
}

fn t1_rhs(n: i64) -> LaurentPoly {
    &LaurentPoly::q_pow(1) * &q_integer(n, 1).pow(2)
}

#[test]
fn modulus_expansion_examples() {
    assert_eq!(ModulusSpec::new().bracket(3, 2).cyclotomic(3, 1).expand().unwrap(), vec![(3, 3)]);
    assert_eq!(ModulusSpec::new().bracket(6, 2).expand().unwrap(), vec![(2, 2), (3, 2), (6, 2)]);
    assert_eq!(ModulusSpec::new().bracket(3, 5).cyclotomic(9, 1).expand().unwrap(), vec![(3, 5), (9, 1)]);
    assert!(ModulusSpec::new().cyclotomic(0, 1).expand().is_err());
    assert_eq!(ModulusSpec::new().bracket(1, 3).expand().unwrap(), vec![]);
}

#[test]
fn bracket_powers_expand_to_q_integer_powers() {
    for n in 1..=40u64 {
        for e in 1..=5u32 {
            let (_, p) = expand_modulus(&ModulusSpec::new().bracket(n, e)).unwrap();
            assert_eq!(p, q_integer(n as i64, 1).pow(e), "n = {n}, e = {e}");
        }
    }
}

#[test]
fn theorem_one_at_three_both_routes() {
    let spec = t1a(3);
    let lhs = spec.sum_over_common_denominator().unwrap();
    let full = check_congruence(&lhs, &t1_rhs(3), &t1_modulus(3)).unwrap();
    assert!(full.holds);
    let fast = check_sum_congruence(&spec, &t1_rhs(3), &t1_modulus(3)).unwrap();
    assert_eq!(full, fast);
}

#[test]
fn zero_is_congruent_to_zero() {
    let v = check_congruence(&RationalFunction::zero(), &LaurentPoly::zero(), &ModulusSpec::new().cyclotomic(7, 3)).unwrap();
    assert!(v.holds && v.denominator_coprime && v.failing_factor.is_none());
}

#[test]
fn empty_modulus_rejected() {
    assert!(check_congruence(&RationalFunction::one(), &LaurentPoly::zero(), &ModulusSpec::new()).is_err());
}

#[test]
fn routes_agree_including_failures() {
    for n in [3i64, 5, 7, 9, 15] {
        let spec = t1a(n);
        let lhs = spec.sum_over_common_denominator().unwrap();
        for (rhs, m) in [
            (t1_rhs(n), t1_modulus(n as u64)),
            (LaurentPoly::zero(), t1_modulus(n as u64)),
            (t1_rhs(n), ModulusSpec::new().cyclotomic(n as u64, 4)),
        ] {
            let full = check_congruence_factors(&lhs, &rhs, &m).unwrap();
            let fast = check_sum_congruence_factors(&spec, &rhs, &m).unwrap();
            assert_eq!(full, fast, "n = {n}, modulus {m}");
        }
    }
}

#[test]
fn composite_modulus_needs_cancellation() {
    // (q^2;q^2)_8^2 contains Φ_3^4, which the numerator must absorb
    let spec = t1a(9);
    let checks = check_sum_congruence_factors(&spec, &t1_rhs(9), &t1_modulus(9)).unwrap();
    assert_eq!(checks[0].index, 3);
    assert!(checks[0].denominator_multiplicity > 0);
    assert!(checks.iter().all(|c| c.outcome == FactorOutcome::Holds));
}

#[test]
fn undefined_is_reported_apart_from_failure() {
    let spec = TruncatedSumSpec {
        bracket: None,
        pochhammers: vec![QPochhammerFactor::new(3, 3, -1)],
        qpower: QPowerFactor::linear(0),
        k_from: 0,
        k_to: 1,
    };
    let m = ModulusSpec::new().cyclotomic(3, 1);
    let fast = check_sum_congruence(&spec, &LaurentPoly::zero(), &m).unwrap();
    assert!(!fast.holds && !fast.denominator_coprime);
    assert_eq!(fast.failing_factor, Some((3, 1)));
    let full = check_congruence(&spec.sum_over_common_denominator().unwrap(), &LaurentPoly::zero(), &m).unwrap();
    assert_eq!(fast, full);
    assert_eq!(sum_oracle(&spec, &LaurentPoly::zero(), 3, 1, 60).unwrap(), OracleOutcome::Undefined);
}

#[test]
fn bracket_base_divisible_by_index_uses_explicit_weights() {
    let spec = TruncatedSumSpec {
        bracket: Some(BracketFactor { u: 2, v: 1, s: 3 }),
        pochhammers: vec![QPochhammerFactor::new(1, 3, 2), QPochhammerFactor::new(3, 3, -2)],
        qpower: QPowerFactor::linear(1),
        k_from: 0,
        k_to: 4,
    };
    let lhs = spec.sum_over_common_denominator().unwrap();
    for m in [ModulusSpec::new().cyclotomic(3, 2), ModulusSpec::new().cyclotomic(5, 1).cyclotomic(1, 1)] {
        let full = check_congruence_factors(&lhs, &LaurentPoly::zero(), &m).unwrap();
        let fast = check_sum_congruence_factors(&spec, &LaurentPoly::zero(), &m).unwrap();
        assert_eq!(full, fast);
    }
}

#[test]
fn polynomial_oracle_examples() {
    let phi5 = cyclotomic(5).unwrap();
    assert!(root_of_unity_oracle(&phi5.pow(2), 5, 2, 60).unwrap());
    assert!(!root_of_unity_oracle(&phi5, 5, 2, 60).unwrap());
    let spec = t1a(5);
    let lhs = spec.sum_over_common_denominator().unwrap();
    let diff = lhs.numerator() - &(&t1_rhs(5) * lhs.denominator());
    assert!(root_of_unity_oracle(&diff, 5, 3, 60).unwrap());
    assert!(!root_of_unity_oracle(&diff, 5, 4, 60).unwrap());
}

#[test]
fn sum_oracle_matches_exact_route() {
    for n in [3i64, 5, 7] {
        let spec = t1a(n);
        let holds = sum_oracle(&spec, &t1_rhs(n), n as u64, 3, 60).unwrap();
        assert_eq!(holds, OracleOutcome::Holds);
        let fails = sum_oracle(&spec, &LaurentPoly::zero(), n as u64, 3, 60).unwrap();
        assert_eq!(fails, OracleOutcome::Fails);
    }
}

#[test]
fn mod_square_examples() {
    assert!(mod_square_property(1, 3, 7, 4, 0).unwrap());
    assert!(mod_square_property(1, 3, 7, 4, 3).unwrap());
    assert!(mod_square_property(1, 1, 5, 4, 4).unwrap());
}

#[test]
fn mod_square_agrees_with_full_expansion() {
    use crate::qseries::pochhammer;
    for (r, alpha, n, d, k) in [(1, 3, 7u64, 4, 3), (3, 1, 5, 6, 4), (-1, 5, 9, 6, 2), (2, 1, 6, 4, 5)] {
        let an = alpha * n as i64;
        let diff = &(&pochhammer(r - an, d, k) * &pochhammer(r + an, d, k)) - &pochhammer(r, d, k).pow(2);
        let full = check_congruence(&RationalFunction::from_poly(diff), &LaurentPoly::zero(), &ModulusSpec::new().cyclotomic(n, 2))
            .unwrap();
        assert_eq!(mod_square_property(r, alpha, n, d, k).unwrap(), full.holds);
    }
}

#[test]
fn mod_square_grid() {
    for d in [4i64, 6] {
        for n in 2..=13u64 {
            for alpha in [1, 3, d - 1] {
                for r in [-3i64, -1, 1, 3, 5] {
                    for k in 0..n as i64 {
                        assert!(mod_square_property(r, alpha, n, d, k).unwrap(), "r={r} α={alpha} n={n} d={d} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn degree_bounds_cover_expansion() {
    let spec = t1a(7);
    let ((nlo, nhi), (dlo, dhi)) = degree_bounds(&spec).unwrap();
    let rf = spec.sum_over_common_denominator().unwrap();
    assert!(nlo <= rf.numerator().min_exp().unwrap() && rf.numerator().max_exp().unwrap() <= nhi);
    assert_eq!((dlo, dhi), (0, rf.denominator().max_exp().unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_invariant_under_coprime_rescaling(n in prop::sample::select(vec![3i64, 5, 7]), shift in -6i64..6, j in 1i64..9, with_zero_rhs: bool) {
        let spec = t1a(n);
        let lhs = spec.sum_over_common_denominator().unwrap();
        let m = t1_modulus(n as u64);
        let rhs = if with_zero_rhs { LaurentPoly::zero() } else { t1_rhs(n) };
        let base = check_congruence(&lhs, &rhs, &m).unwrap();
        // 1 + q^j is divisible by Φ_d exactly when d | 2j and d ∤ j
        let coprime = divisors(n as u64).into_iter().all(|d| !((2 * j) % d as i64 == 0 && j % d as i64 != 0));
        prop_assume!(coprime);
        let mult = &LaurentPoly::q_pow(shift) * &LaurentPoly::one_plus_q_pow(j);
        let scaled = RationalFunction::new(lhs.numerator() * &mult, lhs.denominator() * &mult).unwrap();
        let v = check_congruence(&scaled, &rhs, &m).unwrap();
        prop_assert_eq!(v.holds, base.holds);
        prop_assert_eq!(v.denominator_coprime, base.denominator_coprime);
    }

    #[test]
    fn residue_of_laurent_shift_is_consistent(e in -20i64..20, n in 2u64..9) {
        let m = cyclotomic(n).unwrap().pow(2);
        let a = reduce_laurent(&LaurentPoly::q_pow(e), &m).unwrap();
        let b = reduce_laurent(&LaurentPoly::q_pow(-e), &m).unwrap();
        prop_assert_eq!(rem(&(&a * &b), &m).unwrap(), LaurentPoly::one());
    }
}

#[test]
fn sum_residue_matches_expansion() {
    let spec = t1a(5);
    let phi = cyclotomic(7).unwrap().pow(2);
    let rf = spec.sum_over_common_denominator().unwrap();
    let inv = inverse_mod(&reduce_laurent(rf.denominator(), &phi).unwrap(), &phi).unwrap().unwrap();
    let direct = rem(&(&reduce_laurent(rf.numerator(), &phi).unwrap() * &inv), &phi).unwrap();
    assert_eq!(sum_residue(&spec, 7, 2).unwrap(), Some(direct));
    assert_eq!(sum_residue(&spec, 3, 1).unwrap(), None);
}
