use crate::arith::{gcd_i64, int, is_prime, rat, Rational};
use crate::congruence::ModulusSpec;
use crate::error::Result;
use crate::qpoly::{cyclotomic, LaurentPoly, RationalFunction};
use crate::qseries::{pochhammer, q_integer, BracketFactor, QPowerFactor, TruncatedSumSpec};

use super::integer::{fifth_power_sum, hypergeometric_sum, seventh_power_sum, sun_sum};
use super::invariants::{
    antisymmetry_check, lemma_one_check, negq_check, negq_half_check, qbinomial_check, ratio_congruence_check,
    truncation_equivalence_check, well_poised_plus,
};
use super::{CaseDef, CaseKind, Instance, Params};

type Admit = std::result::Result<(), String>;

fn ensure(cond: bool, msg: &str) -> Admit {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn get(p: &Params, name: &str) -> i64 {
    p[name]
}

fn odd_gt_one(p: &Params) -> Admit {
    let n = get(p, "n");
    ensure(n > 1 && n % 2 != 0, "n must be odd and greater than 1")
}

fn prime_param(p: &Params, min: i64, msg: &str) -> Admit {
    let v = get(p, "p");
    ensure(v >= min && is_prime(v), msg)
}

fn congruent(x: i64, y: i64, m: i64) -> bool {
    (x - y).rem_euclid(m) == 0
}

fn t1_plus(k_to: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(BracketFactor { u: 4, v: 1, s: 1 }, 1, 2, 2, QPowerFactor::linear(-1), k_to)
}

fn t1_minus(k_to: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(BracketFactor { u: 4, v: -1, s: 1 }, -1, 2, 2, QPowerFactor::linear(1), k_to)
}

fn t1_modulus(n: i64) -> ModulusSpec {
    ModulusSpec::new().bracket(n as u64, 2).cyclotomic(n as u64, 1)
}

fn t1_plus_rhs(n: i64) -> LaurentPoly {
    &LaurentPoly::q_pow(1) * &q_integer(n, 1).pow(2)
}

fn t1_minus_rhs(n: i64) -> LaurentPoly {
    -&q_integer(n, 1).pow(2)
}

/// `Σ_{k<n} [2dk-1] (q^{-1};q^d)_k^d / (q^d;q^d)_k^d q^{d(d-1)k/2}`.
fn well_poised_minus(d: i64, n: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(
        BracketFactor { u: 2 * d, v: -1, s: 1 },
        -1,
        d,
        d as i32,
        QPowerFactor::linear(d * (d - 1) / 2),
        n - 1,
    )
}

fn zero_mod(spec: TruncatedSumSpec, modulus: ModulusSpec) -> Result<Instance> {
    Ok(Instance::Congruence { spec, rhs: LaurentPoly::zero(), modulus })
}

fn phi(n: i64, e: u32) -> ModulusSpec {
    ModulusSpec::new().cyclotomic(n as u64, e)
}

fn integer(sum: Rational, target: Rational, p: i64, power: i64) -> Result<Instance> {
    Ok(Instance::Integer { sum, target, p, power })
}

fn check(r: Result<bool>) -> Result<Instance> {
    Ok(Instance::Check { holds: r?, note: String::new() })
}

/// `Σ_{k<n} [2(n+1)k+1] (q;q^{n+1})_k^{2n+2} / (q^{n+1};q^{n+1})_k^{2n+2} q^{(n+1)(n-1)k}`.
fn seventh_q_sum(n: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(
        BracketFactor { u: 2 * n + 2, v: 1, s: 1 },
        1,
        n + 1,
        (2 * n + 2) as i32,
        QPowerFactor::linear((n + 1) * (n - 1)),
        n - 1,
    )
}

/// `Σ_{k<n} [2(n-1)k-1] (q^{-1};q^{n-1})_k^{2n-2} / (q^{n-1};q^{n-1})_k^{2n-2} q^{(n-1)^2 k}`.
fn fifth_q_sum(n: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(
        BracketFactor { u: 2 * n - 2, v: -1, s: 1 },
        -1,
        n - 1,
        (2 * n - 2) as i32,
        QPowerFactor::linear((n - 1) * (n - 1)),
        n - 1,
    )
}

fn one_minus_q_squared() -> LaurentPoly {
    LaurentPoly::one_minus_q_pow(1).pow(2)
}

pub(super) fn cases() -> Vec<CaseDef> {
    use CaseKind::*;
    vec![
        CaseDef::new(
            "T1a",
            QCongruence,
            false,
            &["n"],
            "n odd, n > 1",
            "Σ_{k<n} [4k+1] (q;q²)_k²/(q²;q²)_k² q^{-k} ≡ q[n]² (mod [n]²Φ_n)",
            odd_gt_one,
            |p| {
                let n = get(p, "n");
                Ok(Instance::Congruence { spec: t1_plus(n - 1), rhs: t1_plus_rhs(n), modulus: t1_modulus(n) })
            },
        ),
        CaseDef::new(
            "T1b",
            QCongruence,
            false,
            &["n"],
            "n odd, n > 1",
            "Σ_{k<n} [4k-1] (q^{-1};q²)_k²/(q²;q²)_k² q^k ≡ -[n]² (mod [n]²Φ_n)",
            odd_gt_one,
            |p| {
                let n = get(p, "n");
                Ok(Instance::Congruence { spec: t1_minus(n - 1), rhs: t1_minus_rhs(n), modulus: t1_modulus(n) })
            },
        ),
        CaseDef::new(
            "T1a-half",
            QCongruence,
            false,
            &["n"],
            "n odd, n > 1",
            "Σ_{k≤(n-1)/2} [4k+1] (q;q²)_k²/(q²;q²)_k² q^{-k} ≡ q[n]² (mod [n]²Φ_n)",
            odd_gt_one,
            |p| {
                let n = get(p, "n");
                Ok(Instance::Congruence { spec: t1_plus((n - 1) / 2), rhs: t1_plus_rhs(n), modulus: t1_modulus(n) })
            },
        ),
        CaseDef::new(
            "T1b-half",
            QCongruence,
            false,
            &["n"],
            "n odd, n > 1",
            "Σ_{k≤(n+1)/2} [4k-1] (q^{-1};q²)_k²/(q²;q²)_k² q^k ≡ -[n]² (mod [n]²Φ_n)",
            odd_gt_one,
            |p| {
                let n = get(p, "n");
                Ok(Instance::Congruence { spec: t1_minus((n + 1) / 2), rhs: t1_minus_rhs(n), modulus: t1_modulus(n) })
            },
        ),
        CaseDef::new(
            "CF1",
            ClosedForm,
            false,
            &["n"],
            "n ≥ 1",
            "Σ_{k<n} [4k+1] (q;q²)_k²/(q²;q²)_k² q^{-k} = [n]²(1+q^n)² (q;q²)_n²/(q²;q²)_n² q^{1-n}",
            |p| ensure(get(p, "n") >= 1, "n must be positive"),
            |p| {
                let n = get(p, "n");
                let num = &(&q_integer(n, 1).pow(2) * &LaurentPoly::one_plus_q_pow(n).pow(2))
                    * &(&pochhammer(1, 2, n).pow(2) * &LaurentPoly::q_pow(1 - n));
                let closed = RationalFunction::new(num, pochhammer(2, 2, n).pow(2))?;
                Ok(Instance::ClosedForm { spec: t1_plus(n - 1), closed })
            },
        ),
        CaseDef::new(
            "CF2",
            ClosedForm,
            false,
            &["n"],
            "n ≥ 1",
            "Σ_{k<n} [4k-1] (q^{-1};q²)_k²/(q²;q²)_k² q^k = -[n]²(1+q^n)² (q^{-1};q²)_n²/(q²;q²)_n² q^n",
            |p| ensure(get(p, "n") >= 1, "n must be positive"),
            |p| {
                let n = get(p, "n");
                let num = &(&q_integer(n, 1).pow(2) * &LaurentPoly::one_plus_q_pow(n).pow(2))
                    * &(&pochhammer(-1, 2, n).pow(2) * &LaurentPoly::q_pow(n));
                let closed = RationalFunction::new(-num, pochhammer(2, 2, n).pow(2))?;
                Ok(Instance::ClosedForm { spec: t1_minus(n - 1), closed })
            },
        ),
        CaseDef::new(
            "T2",
            QCongruence,
            false,
            &["d", "n"],
            "d even, d ≥ 4, n ≥ 1, n ≡ -1 (mod d)",
            "Σ_{k<n} [2dk+1] (q;q^d)_k^d/(q^d;q^d)_k^d q^{d(d-3)k/2} ≡ 0 (mod Φ_n²)",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 4 && d % 2 == 0, "d must be even and at least 4")?;
                ensure(n >= 1 && congruent(n, -1, d), "n must be positive with n ≡ -1 (mod d)")
            },
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                zero_mod(well_poised_plus(d, n), phi(n, 2))
            },
        ),
        CaseDef::new(
            "T3",
            QCongruence,
            false,
            &["d", "n"],
            "d even, d ≥ 4, n > 1, n ≡ 1 (mod d)",
            "Σ_{k<n} [2dk-1] (q^{-1};q^d)_k^d/(q^d;q^d)_k^d q^{d(d-1)k/2} ≡ 0 (mod Φ_n²)",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 4 && d % 2 == 0, "d must be even and at least 4")?;
                ensure(n > 1 && congruent(n, 1, d), "n must exceed 1 with n ≡ 1 (mod d)")
            },
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                zero_mod(well_poised_minus(d, n), phi(n, 2))
            },
        ),
        CaseDef::new(
            "T4",
            QCongruence,
            false,
            &["d", "n"],
            "d ≥ 4, n ≥ 1, n ≡ -1 (mod d)",
            "Σ_{k<n} [2dk+1] (q;q^d)_k^d/(q^d;q^d)_k^d q^{d(d-3)k/2} ≡ 0 (mod Φ_n²Φ_{dn-n})",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 4, "d must be at least 4")?;
                ensure(n >= 1 && congruent(n, -1, d), "n must be positive with n ≡ -1 (mod d)")
            },
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                zero_mod(well_poised_plus(d, n), phi(n, 2).cyclotomic((d * n - n) as u64, 1))
            },
        ),
        CaseDef::new(
            "T5",
            QCongruence,
            false,
            &["d", "r", "n"],
            "d even, d ≥ 4, gcd(d, r) = 1, n > 1, n ≡ -r (mod d), n ≥ max(r, d - r)",
            "Σ_{k<n} [2dk+r] (q^r;q^d)_k^d/(q^d;q^d)_k^d q^{d(d-r-2)k/2} ≡ 0 (mod Φ_n²)",
            |p| {
                let (d, r, n) = (get(p, "d"), get(p, "r"), get(p, "n"));
                ensure(d >= 4 && d % 2 == 0, "d must be even and at least 4")?;
                ensure(gcd_i64(d, r) == 1, "gcd(d, r) must be 1")?;
                ensure(n > 1 && congruent(n, -r, d), "n must exceed 1 with n ≡ -r (mod d)")?;
                ensure(n >= r.max(d - r), "n must be at least max(r, d - r)")
            },
            |p| {
                let (d, r, n) = (get(p, "d"), get(p, "r"), get(p, "n"));
                zero_mod(new_d_sum(d, r, n), phi(n, 2))
            },
        ),
        CaseDef::new(
            "T6",
            QCongruence,
            false,
            &["d", "r", "n"],
            "d odd, d ≥ 5, r even, gcd(d, r) = 1, n odd, n > 1, n ≡ -r (mod d), n ≥ max(r, d - r)",
            "Σ_{k<n} [2dk+r]_{q²} (q^{2r};q^{2d})_k^d/(q^{2d};q^{2d})_k^d q^{d(d-r-2)k} ≡ 0 (mod Φ_n²)",
            |p| {
                let (d, r, n) = (get(p, "d"), get(p, "r"), get(p, "n"));
                ensure(d >= 5 && d % 2 != 0, "d must be odd and at least 5")?;
                ensure(r % 2 == 0, "r must be even")?;
                ensure(gcd_i64(d, r) == 1, "gcd(d, r) must be 1")?;
                ensure(n > 1 && n % 2 != 0, "n must be odd and greater than 1")?;
                ensure(congruent(n, -r, d), "n must satisfy n ≡ -r (mod d)")?;
                ensure(n >= r.max(d - r), "n must be at least max(r, d - r)")
            },
            |p| {
                let (d, r, n) = (get(p, "d"), get(p, "r"), get(p, "n"));
                zero_mod(new_odd_sum(d, r, n), phi(n, 2))
            },
        ),
        CaseDef::new(
            "T7",
            QCongruence,
            false,
            &["d", "n"],
            "d ≥ 3, n > 1, n ≡ 1 (mod d)",
            "Σ_{k<n} [2dk-1] (q^{-1};q^d)_k^d/(q^d;q^d)_k^d q^{d(d-1)k/2} ≡ 0 (mod Φ_n²Φ_{dn-n})",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 3, "d must be at least 3")?;
                ensure(n > 1 && congruent(n, 1, d), "n must exceed 1 with n ≡ 1 (mod d)")
            },
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                zero_mod(well_poised_minus(d, n), phi(n, 2).cyclotomic((d * n - n) as u64, 1))
            },
        ),
        CaseDef::new(
            "ODD1",
            QCongruence,
            false,
            &["d", "n"],
            "d odd, d ≥ 5, n > 1, n ≡ -1 (mod d) [Φ_n²] or 2n ≡ -1 (mod d) [Φ_n³]",
            "Σ_{k<n} [2dk+1] (q;q^d)_k^d/(q^d;q^d)_k^d q^{d(d-3)k/2} ≡ 0 (mod Φ_n² or Φ_n³)",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 5 && d % 2 != 0, "d must be odd and at least 5")?;
                ensure(n > 1, "n must exceed 1")?;
                ensure(congruent(n, -1, d) || congruent(2 * n, -1, d), "n must satisfy n ≡ -1 or 2n ≡ -1 (mod d)")
            },
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                let e = if congruent(n, -1, d) { 2 } else { 3 };
                zero_mod(well_poised_plus(d, n), phi(n, e))
            },
        ),
        CaseDef::new(
            "ODD2",
            QCongruence,
            false,
            &["d", "n"],
            "d odd, d ≥ 3, n > 1, n ≡ 1 (mod d) [Φ_n²] or 2n ≡ 1 (mod d) [Φ_n³]",
            "Σ_{k<n} [2dk-1] (q^{-1};q^d)_k^d/(q^d;q^d)_k^d q^{d(d-1)k/2} ≡ 0 (mod Φ_n² or Φ_n³)",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 3 && d % 2 != 0, "d must be odd and at least 3")?;
                ensure(n > 1, "n must exceed 1")?;
                ensure(congruent(n, 1, d) || congruent(2 * n, 1, d), "n must satisfy n ≡ 1 or 2n ≡ 1 (mod d)")
            },
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                let e = if congruent(n, 1, d) { 2 } else { 3 };
                zero_mod(well_poised_minus(d, n), phi(n, e))
            },
        ),
        CaseDef::new(
            "E2p2k",
            IntegerCongruence,
            false,
            &["p"],
            "p an odd prime",
            "Σ_{k<p} (2p+2k+1) (1/(p+1))_k^{p+1}/k!^{p+1} ≡ 0 (mod p³)",
            |p| prime_param(p, 3, "p must be an odd prime"),
            |p| {
                let pp = get(p, "p");
                integer(sun_sum(pp, |k| int(2 * pp + 2 * k + 1)), int(0), pp, 3)
            },
        ),
        CaseDef::new(
            "SUN5",
            IntegerCongruence,
            false,
            &["p"],
            "p prime, p ≥ 3 (modulus p⁵ for p > 3, 3³ for p = 3)",
            "Σ_{k<p} (1/(p+1))_k^{p+1}/k!^{p+1} ≡ 0 (mod p⁵)",
            |p| prime_param(p, 3, "p must be an odd prime"),
            |p| {
                let pp = get(p, "p");
                integer(sun_sum(pp, |_| int(1)), int(0), pp, if pp == 3 { 3 } else { 5 })
            },
        ),
        CaseDef::new(
            "C5",
            IntegerCongruence,
            false,
            &["p"],
            "p an odd prime",
            "Σ_{k<p} k (1/(p+1))_k^{p+1}/k!^{p+1} ≡ 0 (mod p³)",
            |p| prime_param(p, 3, "p must be an odd prime"),
            |p| {
                let pp = get(p, "p");
                integer(sun_sum(pp, int), int(0), pp, 3)
            },
        ),
        CaseDef::new(
            "GAO",
            IntegerCongruence,
            false,
            &["p"],
            "p prime, p ≥ 5",
            "Σ_{k<p} k (1/(p+1))_k^{p+1}/k!^{p+1} ≡ p³/4 - p⁴/8 (mod p⁵)",
            |p| prime_param(p, 5, "p must be a prime ≥ 5"),
            |p| {
                let pp = get(p, "p");
                let target = rat(pp.pow(3), 4) - rat(pp.pow(4), 8);
                integer(sun_sum(pp, int), target, pp, 5)
            },
        ),
        CaseDef::new(
            "CONJ-A",
            IntegerCongruence,
            true,
            &["r", "p"],
            "r ≥ 1, p prime, p > 2r + 1",
            "Σ_{k<p} k^r (k + 1/(p+1))^r (1/(p+1))_k^{p+1}/k!^{p+1} ≡ 0 (mod p⁴)",
            |p| {
                let (r, pp) = (get(p, "r"), get(p, "p"));
                ensure(r >= 1, "r must be positive")?;
                ensure(is_prime(pp) && pp > 2 * r + 1, "p must be a prime greater than 2r + 1")
            },
            |p| {
                let (r, pp) = (get(p, "r"), get(p, "p"));
                let a = rat(1, pp + 1);
                let sum = hypergeometric_sum(&a, (pp + 1) as u32, pp - 1, |k| {
                    let x = int(k) * (int(k) + &a);
                    num_traits::Pow::pow(&x, r as i32)
                });
                integer(sum, int(0), pp, 4)
            },
        ),
        CaseDef::new(
            "CONJ-B",
            IntegerCongruence,
            true,
            &["p", "r"],
            "p prime, p > 3, r ≥ 1",
            "Σ_{k<p^r} (2k(p^{r+1}-1)/(p^r-1)+1) (a)_k^E/k!^E ≡ 0 (mod p^{2r+5}), a = (p^r-1)/(p^{r+1}-1), E = 2(p^{r+1}-1)/(p-1)",
            |p| {
                let (pp, r) = (get(p, "p"), get(p, "r"));
                ensure(is_prime(pp) && pp > 3, "p must be a prime greater than 3")?;
                ensure(r >= 1, "r must be positive")
            },
            |p| {
                let (pp, r) = (get(p, "p"), get(p, "r"));
                integer(seventh_power_sum(pp, r as u32), int(0), pp, 2 * r + 5)
            },
        ),
        CaseDef::new(
            "CONJ-C",
            IntegerCongruence,
            true,
            &["p", "r"],
            "p prime, p > 3, r ≥ 1",
            "Σ_{k<p^r} (2kp^r-2k-1) (-1/(p^r-1))_k^E/k!^E ≡ 0 (mod p^{2r+3}), E = 2p^r - 2",
            |p| {
                let (pp, r) = (get(p, "p"), get(p, "r"));
                ensure(is_prime(pp) && pp > 3, "p must be a prime greater than 3")?;
                ensure(r >= 1, "r must be positive")
            },
            |p| {
                let (pp, r) = (get(p, "p"), get(p, "r"));
                integer(fifth_power_sum(pp, r as u32), int(0), pp, 2 * r + 3)
            },
        ),
        CaseDef::new(
            "QCONJ-1",
            QCongruence,
            true,
            &["n"],
            "n > 1",
            "Σ_{k<n} [2nk+2k+1] (q;q^{n+1})_k^{2n+2}/(q^{n+1};q^{n+1})_k^{2n+2} q^{(n+1)(n-1)k} ≡ 0 (mod [n]²Φ_n²Φ_{n²})",
            |p| ensure(get(p, "n") > 1, "n must exceed 1"),
            |p| {
                let n = get(p, "n");
                let m = ModulusSpec::new().bracket(n as u64, 2).cyclotomic(n as u64, 2).cyclotomic((n * n) as u64, 1);
                zero_mod(seventh_q_sum(n), m)
            },
        ),
        CaseDef::new(
            "QCONJ-2",
            QCongruence,
            true,
            &["p"],
            "p prime",
            "Σ_{k<p} [2pk+2k+1] (q;q^{p+1})_k^{2p+2}/(q^{p+1};q^{p+1})_k^{2p+2} q^{(p+1)(p-1)k} ≡ -(2p+1)(p+1)²p(p-1)/72 q(1-q)²[p]⁴Φ_{p²} (mod [p]⁵Φ_{p²})",
            |p| prime_param(p, 2, "p must be prime"),
            |p| {
                let pp = get(p, "p");
                let c = rat(-(2 * pp + 1) * (pp + 1) * (pp + 1) * pp * (pp - 1), 72);
                let rhs = (&(&LaurentPoly::q_pow(1) * &one_minus_q_squared())
                    * &(&q_integer(pp, 1).pow(4) * &cyclotomic((pp * pp) as u64)?))
                    .scale(&c);
                let m = ModulusSpec::new().bracket(pp as u64, 5).cyclotomic((pp * pp) as u64, 1);
                Ok(Instance::Congruence { spec: seventh_q_sum(pp), rhs, modulus: m })
            },
        ),
        CaseDef::new(
            "QCONJ-3",
            QCongruence,
            true,
            &["n"],
            "n > 1",
            "Σ_{k<n} [2nk-2k-1] (q^{-1};q^{n-1})_k^{2n-2}/(q^{n-1};q^{n-1})_k^{2n-2} q^{(n-1)²k} ≡ 0 (mod [n]²Φ_n²)",
            |p| ensure(get(p, "n") > 1, "n must exceed 1"),
            |p| {
                let n = get(p, "n");
                zero_mod(fifth_q_sum(n), ModulusSpec::new().bracket(n as u64, 2).cyclotomic(n as u64, 2))
            },
        ),
        CaseDef::new(
            "QCONJ-4",
            QCongruence,
            true,
            &["p"],
            "p prime",
            "Σ_{k<p} [2pk-2k-1] (q^{-1};q^{p-1})_k^{2p-2}/(q^{p-1};q^{p-1})_k^{2p-2} q^{(p-1)²k} ≡ (2p-3)(p-1)(p-2)²(p-3)/6 (1-q)²[p]⁴ (mod [p]⁵)",
            |p| prime_param(p, 2, "p must be prime"),
            |p| {
                let pp = get(p, "p");
                let c = rat((2 * pp - 3) * (pp - 1) * (pp - 2) * (pp - 2) * (pp - 3), 6);
                let rhs = (&one_minus_q_squared() * &q_integer(pp, 1).pow(4)).scale(&c);
                Ok(Instance::Congruence { spec: fifth_q_sum(pp), rhs, modulus: ModulusSpec::new().bracket(pp as u64, 5) })
            },
        ),
        CaseDef::new(
            "antisymmetry",
            Invariant,
            false,
            &["d", "n"],
            "d ≥ 4, n ≡ -1 (mod d)",
            "terms k and (dn-n-1)/d - k of the [2dk+1] sum cancel modulo Φ_{dn-n}",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 4 && n >= 1 && congruent(n, -1, d), "need d ≥ 4 and n ≡ -1 (mod d)")
            },
            |p| check(antisymmetry_check(get(p, "d"), get(p, "n"))),
        ),
        CaseDef::new(
            "truncation",
            Invariant,
            false,
            &["d", "n"],
            "d ≥ 2, n ≡ -1 (mod d)",
            "terms (dn-n-1)/d < k < n of the [2dk+1] sum vanish modulo Φ_{dn-n}",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 2 && n >= 1 && congruent(n, -1, d), "need d ≥ 2 and n ≡ -1 (mod d)")
            },
            |p| check(truncation_equivalence_check(get(p, "d"), get(p, "n"))),
        ),
        CaseDef::new(
            "ratio",
            Invariant,
            false,
            &["d", "n"],
            "d ≥ 2, n ≡ -1 (mod d)",
            "(q;q^d)_M/(q^d;q^d)_M ≡ (-1)^M q^{(d-1)(n-1)M/2} (mod Φ_{dn-n}), M = (dn-n-1)/d",
            |p| {
                let (d, n) = (get(p, "d"), get(p, "n"));
                ensure(d >= 2 && n >= 1 && congruent(n, -1, d), "need d ≥ 2 and n ≡ -1 (mod d)")?;
                let m = (d * n - n - 1) / d;
                ensure(((d - 1) * (n - 1) * m) % 2 == 0, "the q-power exponent must be an integer")
            },
            |p| check(ratio_congruence_check(get(p, "d"), get(p, "n"))),
        ),
        CaseDef::new(
            "lemma-1",
            Invariant,
            false,
            &["d", "r", "a"],
            "d ≥ 5, a ≥ 1, gcd(d, r) = 1, n = ad - r ≥ r",
            "the least k > 0 with 2r + kd ≡ 0 (mod ad - r) satisfies k ≥ a(d-4)/2",
            |p| {
                let (d, r, a) = (get(p, "d"), get(p, "r"), get(p, "a"));
                ensure(d >= 5 && a >= 1, "need d ≥ 5 and a ≥ 1")?;
                ensure(gcd_i64(d, r) == 1, "gcd(d, r) must be 1")?;
                ensure(a * d - r >= r.max(1), "need n = ad - r ≥ r")
            },
            |p| check(lemma_one_check(get(p, "d"), get(p, "r"), get(p, "a"))),
        ),
        CaseDef::new(
            "qbinomial",
            Invariant,
            false,
            &["n"],
            "n odd, n > 1",
            "[2n-1 choose n-1] ≡ 1 (mod Φ_n)",
            odd_gt_one,
            |p| check(qbinomial_check(get(p, "n"))),
        ),
        CaseDef::new(
            "negq",
            Invariant,
            false,
            &["n"],
            "n odd, n > 1",
            "(-q;q)_{n-1} ≡ 1 (mod Φ_n)",
            odd_gt_one,
            |p| check(negq_check(get(p, "n"))),
        ),
        CaseDef::new(
            "negq-half",
            Invariant,
            false,
            &["n"],
            "n odd, n > 1",
            "(-q;q)_{(n-1)/2}² ≡ q^{(n²-1)/8} (mod Φ_n)",
            odd_gt_one,
            |p| check(negq_half_check(get(p, "n"))),
        ),
    ]
}

/// `Σ_{k<n} [2dk+r] (q^r;q^d)_k^d / (q^d;q^d)_k^d q^{d(d-r-2)k/2}`.
pub(crate) fn new_d_sum(d: i64, r: i64, n: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(
        BracketFactor { u: 2 * d, v: r, s: 1 },
        r,
        d,
        d as i32,
        QPowerFactor::new(int(0), rat(d * (d - r - 2), 2)),
        n - 1,
    )
}

/// `Σ_{k<n} [2dk+r]_{q²} (q^{2r};q^{2d})_k^d / (q^{2d};q^{2d})_k^d q^{d(d-r-2)k}`.
pub(crate) fn new_odd_sum(d: i64, r: i64, n: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(
        BracketFactor { u: 2 * d, v: r, s: 2 },
        2 * r,
        2 * d,
        d as i32,
        QPowerFactor::linear(d * (d - r - 2)),
        n - 1,
    )
}
