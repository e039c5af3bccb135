//! Congruences of rational functions modulo products of cyclotomic powers.
//!
//! `N/D ≡ R (mod Φ_n^e)` means: after cancelling the full power `Φ_n^j` of the
//! denominator against the numerator, `Φ_n^e` divides `N' - R D'`. If the
//! numerator cannot absorb `Φ_n^j` the congruence is undefined, which is
//! reported apart from a failure. Equivalently one checks `Φ_n^j | N` and
//! `Φ_n^{e+j} | N - R D`.
//!
//! Negative exponents are harmless: `Φ_n(0) = ±1`, so `q` is a unit modulo
//! every cyclotomic power and a global q-shift never changes a verdict.
//!
//! Two routes decide the same question. [`check_congruence`] expands
//! everything and divides. [`check_sum_congruence`] never leaves the residue
//! ring `Z[q]/((q^n - 1)^{e+j})`, which keeps the work proportional to `n`
//! rather than to the degree of the common denominator.

pub mod oracle;
pub mod residue;
pub mod terms;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::qpoly::division::{divrem, exact_div, inverse_mod, rem};
use crate::qpoly::{cyclotomic_arc, LaurentPoly, RationalFunction};
use crate::qseries::{BracketMode, SumPlan, TruncatedSumSpec};

pub use oracle::{plan_oracle, root_of_unity_oracle, sum_oracle, OracleOutcome};
pub use residue::{Residue, ResidueRing};
pub use terms::{sum_vanishes, term_residues, term_vanishes, TermResidue};

/// A formal product `Π Φ_{n_i}^{e_i} · Π [m_j]^{f_j}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusSpec {
    pub cyclotomic_powers: Vec<(u64, u32)>,
    pub bracket_powers: Vec<(u64, u32)>,
}

impl ModulusSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cyclotomic(mut self, n: u64, e: u32) -> Self {
        self.cyclotomic_powers.push((n, e));
        self
    }

    pub fn bracket(mut self, n: u64, e: u32) -> Self {
        self.bracket_powers.push((n, e));
        self
    }

    /// Canonical `(index, exponent)` list, sorted by index, coinciding factors merged.
    pub fn expand(&self) -> Result<Vec<(u64, u32)>> {
        let mut acc: BTreeMap<u64, u32> = BTreeMap::new();
        for &(n, e) in &self.cyclotomic_powers {
            if n == 0 {
                return Err(Error::ZeroCyclotomicIndex);
            }
            if e == 0 {
                return Err(Error::InvalidSpec(format!("zero exponent on Φ_{n}")));
            }
            *acc.entry(n).or_default() += e;
        }
        for &(n, e) in &self.bracket_powers {
            if n == 0 {
                return Err(Error::InvalidSpec("[0] is zero and cannot be a modulus".into()));
            }
            if e == 0 {
                return Err(Error::InvalidSpec(format!("zero exponent on [{n}]")));
            }
            for m in divisors(n).into_iter().filter(|&m| m > 1) {
                *acc.entry(m).or_default() += e;
            }
        }
        Ok(acc.into_iter().collect())
    }

    pub fn polynomial(&self) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::one();
        for (n, e) in self.expand()? {
            p = &p * &cyclotomic_arc(n)?.pow(e);
        }
        Ok(p)
    }
}

impl fmt::Display for ModulusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for &(n, e) in &self.bracket_powers {
            parts.push(if e == 1 { format!("[{n}]") } else { format!("[{n}]^{e}") });
        }
        for &(n, e) in &self.cyclotomic_powers {
            parts.push(if e == 1 { format!("Phi_{n}") } else { format!("Phi_{n}^{e}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Canonical factor list of `m` together with its product.
pub fn expand_modulus(m: &ModulusSpec) -> Result<(Vec<(u64, u32)>, LaurentPoly)> {
    Ok((m.expand()?, m.polynomial()?))
}

/// Outcome for one factor `Φ_n^e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub index: u64,
    pub exponent: u32,
    /// Multiplicity of `Φ_n` in the unreduced denominator.
    pub denominator_multiplicity: u32,
    pub outcome: FactorOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorOutcome {
    Holds,
    Fails { residue_degree: i64 },
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceVerdict {
    pub holds: bool,
    pub denominator_coprime: bool,
    pub failing_factor: Option<(u64, u32)>,
    pub residue_degree: Option<i64>,
}

impl CongruenceVerdict {
    /// Folds per-factor results in index order; the first non-holding factor is reported.
    pub fn fold(checks: &[FactorCheck]) -> Self {
        let mut v = Self { holds: true, denominator_coprime: true, failing_factor: None, residue_degree: None };
        for c in checks {
            match c.outcome {
                FactorOutcome::Holds => {}
                FactorOutcome::Undefined => {
                    v.denominator_coprime = false;
                    v.holds = false;
                    v.failing_factor.get_or_insert((c.index, c.exponent));
                }
                FactorOutcome::Fails { residue_degree } => {
                    v.holds = false;
                    if v.failing_factor.is_none() {
                        v.failing_factor = Some((c.index, c.exponent));
                        v.residue_degree = Some(residue_degree);
                    }
                }
            }
        }
        v
    }

    pub fn undefined(&self) -> bool {
        !self.denominator_coprime
    }
}

/// Remainder of a Laurent polynomial modulo a polynomial `m` with `m(0) ≠ 0`.
pub fn reduce_laurent(p: &LaurentPoly, m: &LaurentPoly) -> Result<LaurentPoly> {
    match p.min_exp() {
        None => Ok(LaurentPoly::zero()),
        Some(lo) if lo >= 0 => rem(p, m),
        Some(lo) => {
            let r = rem(&p.shift(-lo), m)?;
            let inv = inverse_mod(&LaurentPoly::q_pow(-lo), m)?
                .ok_or_else(|| Error::InvalidSpec("q is not invertible modulo the modulus".into()))?;
            rem(&(&r * &inv), m)
        }
    }
}

fn multiplicity(p: &LaurentPoly, phi: &LaurentPoly) -> Result<(u32, LaurentPoly)> {
    let (mut p, _) = p.normalize_shift();
    let mut j = 0;
    if p.is_zero() {
        return Ok((0, p));
    }
    while let Some(q) = exact_div(&p, phi)? {
        p = q;
        j += 1;
    }
    Ok((j, p))
}

fn check_factor_full(
    num: &LaurentPoly,
    den: &LaurentPoly,
    diff: &LaurentPoly,
    n: u64,
    e: u32,
) -> Result<FactorCheck> {
    let phi = cyclotomic_arc(n)?;
    let (j, _) = multiplicity(den, &phi)?;
    let mut check = FactorCheck { index: n, exponent: e, denominator_multiplicity: j, outcome: FactorOutcome::Holds };
    let (mut nn, _) = num.normalize_shift();
    for _ in 0..j {
        match exact_div(&nn, &phi)? {
            Some(q) => nn = q,
            None => {
                check.outcome = FactorOutcome::Undefined;
                return Ok(check);
            }
        }
    }
    let (mut p, _) = diff.normalize_shift();
    for _ in 0..e + j {
        let (q, r) = divrem(&p, &phi)?;
        if !r.is_zero() {
            let big = phi.pow(e + j);
            let residue = reduce_laurent(diff, &big)?;
            check.outcome = FactorOutcome::Fails { residue_degree: residue.degree().unwrap_or(0) };
            return Ok(check);
        }
        p = q;
    }
    Ok(check)
}

/// Per-factor results of the fully expanded check.
pub fn check_congruence_factors(
    lhs: &RationalFunction,
    rhs: &LaurentPoly,
    m: &ModulusSpec,
) -> Result<Vec<FactorCheck>> {
    let factors = m.expand()?;
    if factors.is_empty() {
        return Err(Error::InvalidSpec("modulus is 1".into()));
    }
    let (num, den) = (lhs.numerator(), lhs.denominator());
    let diff = num - &(rhs * den);
    factors.iter().map(|&(n, e)| check_factor_full(num, den, &diff, n, e)).collect()
}

/// Decides `lhs ≡ rhs (mod m)` by exact division.
pub fn check_congruence(lhs: &RationalFunction, rhs: &LaurentPoly, m: &ModulusSpec) -> Result<CongruenceVerdict> {
    Ok(CongruenceVerdict::fold(&check_congruence_factors(lhs, rhs, m)?))
}

/// Bracket handling that keeps `1 - q^s` invertible modulo `Φ_n`.
pub fn bracket_mode_for(spec: &TruncatedSumSpec, n: u64) -> BracketMode {
    match &spec.bracket {
        Some(b) if b.s % n as i64 == 0 => BracketMode::Explicit,
        _ => BracketMode::Binomial,
    }
}

/// One factor of [`check_sum_congruence`].
pub fn check_plan_factor(plan: &SumPlan, rhs: &LaurentPoly, n: u64, e: u32) -> Result<FactorCheck> {
    let phi = cyclotomic_arc(n)?;
    let j = plan.denominator_multiplicity(n as i64);
    let levels = e + j;
    let ring = ResidueRing::new(n, levels);
    let (np, dp) = plan.accumulate(&ring);
    let big = phi.pow(levels);
    let num = plan_numerator(plan, &ring, &np, &big, n)?;
    let mut check = FactorCheck { index: n, exponent: e, denominator_multiplicity: j, outcome: FactorOutcome::Holds };
    if j > 0 && !rem(&num, &phi.pow(j))?.is_zero() {
        check.outcome = FactorOutcome::Undefined;
        return Ok(check);
    }
    let den = rem(&ring.to_poly(&dp), &big)?;
    let r = reduce_laurent(rhs, &big)?;
    let residue = rem(&(&num - &(&r * &den)), &big)?;
    if !residue.is_zero() {
        check.outcome = FactorOutcome::Fails { residue_degree: residue.degree().unwrap_or(0) };
    }
    Ok(check)
}

fn plan_numerator(plan: &SumPlan, ring: &ResidueRing, np: &Residue, big: &LaurentPoly, n: u64) -> Result<LaurentPoly> {
    let num = rem(&ring.to_poly(np), big)?;
    match plan.bracket_base {
        Some(s) => {
            let inv = inverse_mod(&LaurentPoly::one_minus_q_pow(s), big)?
                .ok_or_else(|| Error::InvalidSpec(format!("1 - q^{s} is not invertible modulo Φ_{n}")))?;
            rem(&(&num * &inv), big)
        }
        None => Ok(num),
    }
}

/// Residue of `Σ spec` modulo `Φ_n^e`, or `None` if the denominator shares a factor with `Φ_n`.
pub fn sum_residue(spec: &TruncatedSumSpec, n: u64, e: u32) -> Result<Option<LaurentPoly>> {
    spec.validate()?;
    let plan = SumPlan::from_spec(spec, bracket_mode_for(spec, n))?;
    if plan.denominator_multiplicity(n as i64) > 0 {
        return Ok(None);
    }
    let big = cyclotomic_arc(n)?.pow(e);
    let ring = ResidueRing::new(n, e);
    let (np, dp) = plan.accumulate(&ring);
    let num = plan_numerator(&plan, &ring, &np, &big, n)?;
    let den = rem(&ring.to_poly(&dp), &big)?;
    let inv = inverse_mod(&den, &big)?.expect("denominator is coprime to the modulus");
    Ok(Some(rem(&(&num * &inv), &big)?))
}

/// Per-factor results of the residue-ring check.
pub fn check_sum_congruence_factors(
    spec: &TruncatedSumSpec,
    rhs: &LaurentPoly,
    m: &ModulusSpec,
) -> Result<Vec<FactorCheck>> {
    let factors = m.expand()?;
    if factors.is_empty() {
        return Err(Error::InvalidSpec("modulus is 1".into()));
    }
    spec.validate()?;
    factors
        .iter()
        .map(|&(n, e)| {
            let plan = SumPlan::from_spec(spec, bracket_mode_for(spec, n))?;
            check_plan_factor(&plan, rhs, n, e)
        })
        .collect()
}

/// Decides `Σ spec ≡ rhs (mod m)` without expanding the common denominator.
pub fn check_sum_congruence(spec: &TruncatedSumSpec, rhs: &LaurentPoly, m: &ModulusSpec) -> Result<CongruenceVerdict> {
    Ok(CongruenceVerdict::fold(&check_sum_congruence_factors(spec, rhs, m)?))
}

/// `(q^{r-αn}, q^{r+αn}; q^d)_k ≡ (q^r; q^d)_k^2 (mod Φ_n^2)`.
pub fn mod_square_property(r: i64, alpha: i64, n: u64, d: i64, k: i64) -> Result<bool> {
    use crate::qseries::{Binomial, SumRing};
    if n == 0 {
        return Err(Error::ZeroCyclotomicIndex);
    }
    let an = alpha * n as i64;
    let ring = ResidueRing::new(n, 2);
    let mut lhs = ring.one();
    let mut rhs = ring.one();
    for j in 0..k {
        let x = r + j * d;
        ring.mul_binomial(&mut lhs, Binomial { exp: x - an, plus: false });
        ring.mul_binomial(&mut lhs, Binomial { exp: x + an, plus: false });
        ring.mul_binomial(&mut rhs, Binomial { exp: x, plus: false });
        ring.mul_binomial(&mut rhs, Binomial { exp: x, plus: false });
    }
    ring.add_assign(&mut lhs, &ring.neg(&rhs));
    let phi2 = cyclotomic_arc(n)?.pow(2);
    Ok(rem(&ring.to_poly(&lhs), &phi2)?.is_zero())
}

/// Bounds `(min, max)` on the exponents of the unreduced numerator and denominator.
pub fn degree_bounds(spec: &TruncatedSumSpec) -> Result<((i64, i64), (i64, i64))> {
    let plan = SumPlan::from_spec(spec, BracketMode::Explicit)?;
    let (n, d) = plan.accumulate(&crate::qseries::DegreeRing);
    Ok((n.unwrap_or((0, 0)), d.unwrap_or((0, 0))))
}

#[cfg(test)]
mod tests;
