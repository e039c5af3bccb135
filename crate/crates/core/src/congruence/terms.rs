//! Term-by-term residues modulo a single cyclotomic polynomial.

use crate::arith::rat;
use crate::error::Result;
use crate::qpoly::division::{exact_div, rem};
use crate::qpoly::{cyclotomic_arc, LaurentPoly};
use crate::qseries::{Binomial, TruncatedSumSpec};

/// One summand written as `Φ_m^valuation · num / den` with `den` prime to `Φ_m`.
/// `valuation` is `None` when the summand is identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermResidue {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
    pub valuation: Option<i64>,
}

impl TermResidue {
    /// Residue numerator modulo `Φ_m`, valid when the valuation is nonnegative.
    fn reduced_num(&self) -> Option<&LaurentPoly> {
        match self.valuation {
            Some(0) => Some(&self.num),
            _ => None,
        }
    }
}

struct Reducer {
    m: i64,
    phi: LaurentPoly,
    /// `(1 - q^m)/Φ_m mod Φ_m`.
    cofactor: LaurentPoly,
}

/// Running `Φ_m^v · num/den`.
#[derive(Clone)]
struct Acc {
    num: LaurentPoly,
    den: LaurentPoly,
    v: i64,
    zero: bool,
}

impl Reducer {
    fn new(m: u64) -> Result<Self> {
        let phi = (*cyclotomic_arc(m)?).clone();
        let m = m as i64;
        let cofactor = exact_div(&LaurentPoly::one_minus_q_pow(m), &phi)?.expect("Φ_m divides 1 - q^m");
        let cofactor = rem(&cofactor, &phi)?;
        Ok(Self { m, phi, cofactor })
    }

    fn reduce(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let folded = LaurentPoly::from_terms(p.terms().map(|(e, c)| (e.rem_euclid(self.m), c.clone())));
        rem(&folded, &self.phi)
    }

    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
        rem(&(a * b), &self.phi)
    }

    /// Multiplies `acc` by `b^power` (`inverse` puts it in the denominator).
    fn apply(&self, acc: &mut Acc, b: Binomial, power: u32, inverse: bool) -> Result<()> {
        if power == 0 || acc.zero {
            return Ok(());
        }
        let (unit_num, unit_den, v) = self.split(b)?;
        let Some(unit_num) = unit_num else {
            acc.zero = !inverse;
            return Ok(());
        };
        let (top, bottom) = if inverse { (&unit_den, &unit_num) } else { (&unit_num, &unit_den) };
        for _ in 0..power {
            acc.num = self.mul(&acc.num, top)?;
            acc.den = self.mul(&acc.den, bottom)?;
        }
        let v = v * power as i64;
        acc.v += if inverse { -v } else { v };
        Ok(())
    }

    /// `b = Φ_m^v · num/den`; `num` is `None` for the zero factor.
    fn split(&self, b: Binomial) -> Result<(Option<LaurentPoly>, LaurentPoly, i64)> {
        let one = LaurentPoly::one();
        if b.exp == 0 && !b.plus {
            return Ok((None, one, 0));
        }
        match b.cyclotomic_multiplicity(self.m) {
            0 => Ok((Some(self.reduce(&b.to_poly())?), one, 0)),
            _ if !b.plus => Ok((Some(self.cofactor.scale(&rat(b.exp, self.m))), one, 1)),
            _ => {
                // 1 + q^e = (1 - q^{2e}) / (1 - q^e) with q^e ≡ q^{m/2}
                let den = self.reduce(&LaurentPoly::one_minus_q_pow(self.m / 2))?;
                Ok((Some(self.cofactor.scale(&rat(2 * b.exp, self.m))), den, 1))
            }
        }
    }
}

/// Residues of every summand of `spec` modulo `Φ_m`, computed incrementally in `k`.
pub fn term_residues(spec: &TruncatedSumSpec, m: u64) -> Result<Vec<TermResidue>> {
    spec.validate()?;
    let red = Reducer::new(m)?;
    let mut acc = Acc { num: LaurentPoly::one(), den: LaurentPoly::one(), v: 0, zero: false };
    let mut out = Vec::with_capacity((spec.k_to - spec.k_from + 1) as usize);
    for k in 0..=spec.k_to {
        if k >= spec.k_from {
            let mut term = acc.clone();
            let e = spec.qpower.exponent_at(k)?;
            term.num = red.mul(&term.num, &red.reduce(&LaurentPoly::q_pow(e))?)?;
            if let Some(b) = &spec.bracket {
                let top = Binomial { exp: b.s * (b.u * k + b.v), plus: false };
                if top.exp == 0 {
                    term.zero = true;
                } else {
                    red.apply(&mut term, top, 1, false)?;
                    red.apply(&mut term, Binomial { exp: b.s, plus: false }, 1, true)?;
                }
            }
            out.push(if term.zero {
                TermResidue { num: LaurentPoly::zero(), den: LaurentPoly::one(), valuation: None }
            } else {
                TermResidue { num: term.num, den: term.den, valuation: Some(term.v) }
            });
        }
        for f in &spec.pochhammers {
            let b = Binomial { exp: f.a + k * f.d, plus: f.negated };
            red.apply(&mut acc, b, f.exponent.unsigned_abs(), f.exponent < 0)?;
        }
    }
    Ok(out)
}

/// `a + b ≡ 0 (mod Φ_m)`, or `None` when either has a pole at the primitive `m`-th roots.
pub fn sum_vanishes(a: &TermResidue, b: &TermResidue, m: u64) -> Result<Option<bool>> {
    if a.valuation.is_some_and(|v| v < 0) || b.valuation.is_some_and(|v| v < 0) {
        return Ok(None);
    }
    let phi = cyclotomic_arc(m)?;
    let mut total = LaurentPoly::zero();
    if let Some(n) = a.reduced_num() {
        total += &(n * &b.den);
    }
    if let Some(n) = b.reduced_num() {
        total += &(n * &a.den);
    }
    Ok(Some(rem(&total, &phi)?.is_zero()))
}

/// `term ≡ 0 (mod Φ_m)`, or `None` at a pole.
pub fn term_vanishes(t: &TermResidue, m: u64) -> Result<Option<bool>> {
    let zero = TermResidue { num: LaurentPoly::zero(), den: LaurentPoly::one(), valuation: None };
    sum_vanishes(t, &zero, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::sum_residue;
    use crate::qseries::{BracketFactor, QPochhammerFactor, QPowerFactor};

    fn residue_value(t: &TermResidue, m: u64) -> Option<LaurentPoly> {
        let phi = cyclotomic_arc(m).unwrap();
        match t.valuation {
            None => Some(LaurentPoly::zero()),
            Some(v) if v > 0 => Some(LaurentPoly::zero()),
            Some(0) => {
                let inv = crate::qpoly::division::inverse_mod(&t.den, &phi).unwrap().unwrap();
                Some(rem(&(&t.num * &inv), &phi).unwrap())
            }
            _ => None,
        }
    }

    #[test]
    fn agrees_with_single_term_residues() {
        let spec = TruncatedSumSpec {
            bracket: Some(BracketFactor { u: 8, v: 1, s: 1 }),
            pochhammers: vec![
                QPochhammerFactor::new(1, 4, 4),
                QPochhammerFactor::new(4, 4, -4),
                QPochhammerFactor::negated(2, 3, 1),
            ],
            qpower: QPowerFactor::linear(-1),
            k_from: 0,
            k_to: 9,
        };
        for m in [3u64, 4, 6, 9, 10, 12] {
            let all = term_residues(&spec, m).unwrap();
            for (k, t) in all.iter().enumerate() {
                let single = TruncatedSumSpec { k_from: k as i64, k_to: k as i64, ..spec.clone() };
                if let Some(r) = sum_residue(&single, m, 1).unwrap() {
                    assert_eq!(residue_value(t, m), Some(r), "m = {m}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn zero_factor_kills_later_terms() {
        let spec = TruncatedSumSpec {
            bracket: None,
            pochhammers: vec![QPochhammerFactor::new(-2, 1, 1)],
            qpower: QPowerFactor::linear(0),
            k_from: 0,
            k_to: 5,
        };
        let v: Vec<_> = term_residues(&spec, 5).unwrap().iter().map(|t| t.valuation).collect();
        assert_eq!(v, vec![Some(0), Some(0), Some(0), None, None, None]);
    }
}
