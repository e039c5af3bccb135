//! Structural checks behind the proofs: term antisymmetry modulo `Φ_{dn-n}`,
//! truncation, the ratio congruence, the divisibility lemma, and a few
//! polynomial congruences modulo `Φ_n`.

use crate::arith::gcd_i64;
use crate::congruence::{check_sum_congruence, reduce_laurent, sum_vanishes, term_residues, term_vanishes, ModulusSpec};
use crate::error::{Error, Result};
use crate::qpoly::{cyclotomic_arc, LaurentPoly};
use crate::qseries::{
    gaussian_binomial, signed_pochhammer, BracketFactor, QPochhammerFactor, QPowerFactor, TruncatedSumSpec,
};

/// `Σ_{k=0}^{n-1} [2dk+1] (q;q^d)_k^d / (q^d;q^d)_k^d q^{d(d-3)k/2}`.
pub fn well_poised_plus(d: i64, n: i64) -> TruncatedSumSpec {
    TruncatedSumSpec::well_poised(
        BracketFactor { u: 2 * d, v: 1, s: 1 },
        1,
        d,
        d as i32,
        QPowerFactor::linear(d * (d - 3) / 2),
        n - 1,
    )
}

fn require_minus_one_class(d: i64, n: i64) -> Result<()> {
    if d < 2 || n < 1 || (n + 1) % d != 0 {
        return Err(Error::Inadmissible(format!("need d ≥ 2, n ≥ 1, n ≡ -1 (mod d); got d = {d}, n = {n}")));
    }
    Ok(())
}

/// `M = (dn - n - 1)/d`.
fn half_point(d: i64, n: i64) -> i64 {
    (d * n - n - 1) / d
}

/// Terms `k` and `M - k` of the `[2dk+1]` sum cancel modulo `Φ_{dn-n}` for `0 ≤ k ≤ M`.
pub fn antisymmetry_check(d: i64, n: i64) -> Result<bool> {
    require_minus_one_class(d, n)?;
    if d < 4 {
        return Err(Error::Inadmissible(format!("need d ≥ 4; got d = {d}")));
    }
    let m = (d * n - n) as u64;
    let mm = half_point(d, n);
    let spec = TruncatedSumSpec { k_to: mm, ..well_poised_plus(d, n) };
    let terms = term_residues(&spec, m)?;
    for k in 0..=mm as usize {
        if sum_vanishes(&terms[k], &terms[mm as usize - k], m)? != Some(true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every term with `M < k ≤ n-1` is individually `≡ 0 (mod Φ_{dn-n})`.
pub fn truncation_equivalence_check(d: i64, n: i64) -> Result<bool> {
    require_minus_one_class(d, n)?;
    let m = (d * n - n) as u64;
    let spec = TruncatedSumSpec { k_from: half_point(d, n) + 1, ..well_poised_plus(d, n) };
    if spec.k_from > spec.k_to {
        return Ok(true);
    }
    for t in term_residues(&spec, m)? {
        if term_vanishes(&t, m)? != Some(true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(q;q^d)_M/(q^d;q^d)_M ≡ (-1)^M q^{(d-1)(n-1)M/2} (mod Φ_{dn-n})`.
pub fn ratio_congruence_check(d: i64, n: i64) -> Result<bool> {
    require_minus_one_class(d, n)?;
    let mm = half_point(d, n);
    let twice = (d - 1) * (n - 1) * mm;
    if twice % 2 != 0 {
        return Err(Error::NonIntegralExponent(format!("{twice}/2"), mm));
    }
    let spec = TruncatedSumSpec {
        bracket: None,
        pochhammers: vec![QPochhammerFactor::new(1, d, 1), QPochhammerFactor::new(d, d, -1)],
        qpower: QPowerFactor::linear(0),
        k_from: mm,
        k_to: mm,
    };
    let mut rhs = LaurentPoly::q_pow(twice / 2);
    if mm % 2 == 1 {
        rhs = -rhs;
    }
    let v = check_sum_congruence(&spec, &rhs, &ModulusSpec::new().cyclotomic((d * n - n) as u64, 1))?;
    Ok(v.holds)
}

/// The least `k > 0` with `2r + kd ≡ 0 (mod n)`, `n = ad - r`, satisfies `k ≥ a(d-4)/2`.
pub fn lemma_one_check(d: i64, r: i64, a: i64) -> Result<bool> {
    let n = a * d - r;
    if d < 5 || a < 1 || gcd_i64(d, r) != 1 || n < r || n < 1 {
        return Err(Error::Inadmissible(format!(
            "need d ≥ 5, a ≥ 1, gcd(d, r) = 1, n = ad - r ≥ r; got d = {d}, r = {r}, a = {a}"
        )));
    }
    let least = (1..n * d).find(|k| (2 * r + k * d).rem_euclid(n) == 0);
    Ok(match least {
        Some(k) => 2 * k >= a * (d - 4),
        None => true,
    })
}

fn require_odd(n: i64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Inadmissible(format!("need odd n ≥ 3; got {n}")));
    }
    Ok(())
}

fn congruent_mod_phi(p: &LaurentPoly, target: &LaurentPoly, n: i64) -> Result<bool> {
    let phi = cyclotomic_arc(n as u64)?;
    Ok(reduce_laurent(&(p - target), &phi)?.is_zero())
}

/// `[2n-1 choose n-1] ≡ 1 (mod Φ_n)`.
pub fn qbinomial_check(n: i64) -> Result<bool> {
    require_odd(n)?;
    congruent_mod_phi(&gaussian_binomial(2 * n - 1, n - 1), &LaurentPoly::one(), n)
}

/// `(-q;q)_{n-1} ≡ 1 (mod Φ_n)`.
pub fn negq_check(n: i64) -> Result<bool> {
    require_odd(n)?;
    congruent_mod_phi(&signed_pochhammer(1, 1, n - 1, true), &LaurentPoly::one(), n)
}

/// `(-q;q)_{(n-1)/2}^2 ≡ q^{(n^2-1)/8} (mod Φ_n)`.
pub fn negq_half_check(n: i64) -> Result<bool> {
    require_odd(n)?;
    let p = signed_pochhammer(1, 1, (n - 1) / 2, true).pow(2);
    congruent_mod_phi(&p, &LaurentPoly::q_pow((n * n - 1) / 8), n)
}
