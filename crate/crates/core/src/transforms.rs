//! Summation and transformation formulas for basic hypergeometric series.
//!
//! Every parameter is an integer exponent: `x` stands for `q^x`, and all
//! q-shifted factorials run in a common base `q^s`. The very-well-poised
//! pair `(q√a, -q√a; q)_k / (√a, -√a; q)_k` is replaced by the equal
//! factor `(1 - a q^{2k}) / (1 - a)`, so `√a` never has to exist and the
//! exponent of `a` may be odd.
//!
//! Terminating identities are compared as exact rational functions,
//! nonterminating ones as Laurent series through a stated order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use std::time::Instant;

use crate::cases::{CaseKind, Detail, Params, Report, Verdict};
use crate::congruence::{reduce_laurent, sum_residue};
use crate::error::{Error, Result};
use crate::qpoly::division::{inverse_mod, rem};
use crate::qpoly::{cyclotomic_arc, series_of, LaurentPoly, RationalFunction, TruncatedSeries};
use crate::qseries::{
    pochhammer, q_integer, Binomial, BracketFactor, QPochhammerFactor, QPowerFactor, TruncatedSumSpec,
};

pub const DEFAULT_ORDER: i64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "6phi5-term")]
    SixPhiFiveTerminating,
    #[serde(rename = "watson-8phi7")]
    Watson,
    #[serde(rename = "andrews-m")]
    Andrews,
    #[serde(rename = "rogers-6phi5")]
    Rogers,
    #[serde(rename = "rdid")]
    Rdid,
    #[serde(rename = "sun-euler")]
    SunEuler,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] =
        [Self::SixPhiFiveTerminating, Self::Watson, Self::Andrews, Self::Rogers, Self::Rdid, Self::SunEuler];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SixPhiFiveTerminating => "6phi5-term",
            Self::Watson => "watson-8phi7",
            Self::Andrews => "andrews-m",
            Self::Rogers => "rogers-6phi5",
            Self::Rdid => "rdid",
            Self::SunEuler => "sun-euler",
        }
    }

    /// Nonterminating identities, compared as series.
    pub fn is_series(self) -> bool {
        matches!(self, Self::Rogers | Self::Rdid | Self::SunEuler)
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::SixPhiFiveTerminating => "terminating very-well-poised 6phi5 summation",
            Self::Watson => "Watson's 8phi7 to 4phi3 transformation",
            Self::Andrews => "Andrews' multiseries extension of Watson's transformation",
            Self::Rogers => "Rogers' nonterminating 6phi5 summation",
            Self::Rdid => "the q -> q^4, a = b = c = d = q^r case of the 6phi5 summation, times [r]",
            Self::SunEuler => "q-analogue of Euler's sum of 1/(2k+1)^2",
        }
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One concrete instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "identity", rename_all = "kebab-case")]
pub enum IdentityInstance {
    #[serde(rename = "6phi5-term")]
    SixPhiFive { a: i64, b: i64, c: i64, n: i64, base: i64 },
    #[serde(rename = "watson-8phi7")]
    Watson { a: i64, b: i64, c: i64, d: i64, e: i64, n: i64, base: i64 },
    #[serde(rename = "andrews-m")]
    Andrews { a: i64, b: Vec<i64>, c: Vec<i64>, n: i64, base: i64 },
    #[serde(rename = "rogers-6phi5")]
    Rogers { a: i64, b: i64, c: i64, d: i64, base: i64, order: i64 },
    #[serde(rename = "rdid")]
    Rdid { r: i64, order: i64 },
    #[serde(rename = "sun-euler")]
    SunEuler { order: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityOutcome {
    pub holds: bool,
    /// Lowest exponent where the two series differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<i64>,
}

impl IdentityInstance {
    pub fn id(&self) -> IdentityId {
        match self {
            Self::SixPhiFive { .. } => IdentityId::SixPhiFiveTerminating,
            Self::Watson { .. } => IdentityId::Watson,
            Self::Andrews { .. } => IdentityId::Andrews,
            Self::Rogers { .. } => IdentityId::Rogers,
            Self::Rdid { .. } => IdentityId::Rdid,
            Self::SunEuler { .. } => IdentityId::SunEuler,
        }
    }

    pub fn evaluate(&self) -> Result<IdentityOutcome> {
        let exact = |holds: bool| IdentityOutcome { holds, first_mismatch: None };
        match self {
            &Self::SixPhiFive { a, b, c, n, base } => check_6phi5_terminating(a, b, c, n, base).map(exact),
            &Self::Watson { a, b, c, d, e, n, base } => check_watson_8phi7(a, b, c, d, e, n, base).map(exact),
            Self::Andrews { a, b, c, n, base } => check_andrews(b.len(), *a, b, c, *n, *base).map(exact),
            &Self::Rogers { a, b, c, d, base, order } => rogers_6phi5_series(a, b, c, d, base, order)?.outcome(order),
            &Self::Rdid { r, order } => rdid_series(r, order)?.outcome(order),
            &Self::SunEuler { order } => sun_euler_series(order)?.outcome(order),
        }
    }

    pub fn check(&self) -> Result<bool> {
        Ok(self.evaluate()?.holds)
    }

    /// Flat parameter map; list entries become `b1, b2, ...`.
    pub fn params(&self) -> Params {
        let mut p = Params::new();
        let mut put = |k: &str, v: i64| {
            p.insert(k.to_string(), v);
        };
        match self {
            &Self::SixPhiFive { a, b, c, n, base } => {
                for (k, v) in [("a", a), ("b", b), ("c", c), ("n", n), ("base", base)] {
                    put(k, v);
                }
            }
            &Self::Watson { a, b, c, d, e, n, base } => {
                for (k, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("e", e), ("n", n), ("base", base)] {
                    put(k, v);
                }
            }
            Self::Andrews { a, b, c, n, base } => {
                for (k, v) in [("a", *a), ("n", *n), ("base", *base), ("m", b.len() as i64)] {
                    put(k, v);
                }
                for (i, (x, y)) in b.iter().zip(c).enumerate() {
                    put(&format!("b{}", i + 1), *x);
                    put(&format!("c{}", i + 1), *y);
                }
            }
            &Self::Rogers { a, b, c, d, base, order } => {
                for (k, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("base", base), ("order", order)] {
                    put(k, v);
                }
            }
            &Self::Rdid { r, order } => {
                put("r", r);
                put("order", order);
            }
            &Self::SunEuler { order } => put("order", order),
        }
        p
    }

    /// Evaluates the instance as a case report. Parameter choices outside the
    /// identity's range are `inadmissible`; a vanishing denominator is `undefined`.
    pub fn report(&self) -> Report {
        let start = Instant::now();
        let mut detail = Detail::default();
        let verdict = match self.evaluate() {
            Ok(o) => {
                if let Some(e) = o.first_mismatch {
                    detail.reason = Some(format!("coefficients differ at q^{e}"));
                }
                if o.holds {
                    Verdict::Holds
                } else {
                    Verdict::Fails
                }
            }
            Err(e @ (Error::Inadmissible(_) | Error::InvalidSpec(_))) => {
                detail.reason = Some(e.to_string());
                Verdict::Inadmissible
            }
            Err(e) => {
                detail.reason = Some(e.to_string());
                Verdict::Undefined
            }
        };
        Report {
            case: self.id().to_string(),
            params: self.params(),
            kind: CaseKind::Identity,
            verdict,
            detail,
            millis: start.elapsed().as_millis() as u64,
        }
    }
}

/// The two sides of a series identity.
#[derive(Debug, Clone)]
pub struct SeriesPair {
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
}

impl SeriesPair {
    fn outcome(&self, order: i64) -> Result<IdentityOutcome> {
        if self.lhs.order() < order || self.rhs.order() < order {
            return Err(Error::InvalidSpec(format!("series known only to q^{}", self.lhs.order().min(self.rhs.order()))));
        }
        let lo = self.lhs.valuation().min(self.rhs.valuation()).min(order + 1);
        let first_mismatch = (lo..=order).find(|&e| self.lhs.coeff(e) != self.rhs.coeff(e));
        Ok(IdentityOutcome { holds: first_mismatch.is_none(), first_mismatch })
    }
}

fn vanishing(what: String) -> Error {
    Error::VanishingDenominator(what)
}

/// `Π (q^{x}; q^s)_k` over `xs`.
fn poch_product(xs: &[i64], s: i64, k: i64) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for &x in xs {
        p = &p * &pochhammer(x, s, k);
    }
    p
}

fn poch_ratio(num: &[i64], den: &[i64], s: i64, k: i64) -> Result<RationalFunction> {
    let d = poch_product(den, s, k);
    if d.is_zero() {
        return Err(vanishing(format!("(q^{den:?}; q^{s})_{k}")));
    }
    RationalFunction::new(poch_product(num, s, k), d)
}

fn check_base(s: i64) -> Result<()> {
    if s < 1 {
        return Err(Error::InvalidSpec(format!("base exponent must be positive; got {s}")));
    }
    Ok(())
}

fn check_a(a: i64) -> Result<()> {
    if a == 0 {
        return Err(vanishing("1 - a with a = 1".into()));
    }
    Ok(())
}

/// `Σ_{k=0}^{n} (1 - q^{a+2sk})/(1 - q^a) (q^a, q^{x_1}, …; q^s)_k / (q^s, q^{a+s-x_1}, …; q^s)_k q^{zk}`.
fn vwp_terminating(a: i64, xs: &[i64], z: i64, s: i64, n: i64) -> Result<RationalFunction> {
    check_a(a)?;
    let mut pochhammers = vec![QPochhammerFactor::new(a, s, 1), QPochhammerFactor::new(s, s, -1)];
    for &x in xs {
        pochhammers.push(QPochhammerFactor::new(x, s, 1));
        pochhammers.push(QPochhammerFactor::new(a + s - x, s, -1));
    }
    let spec = TruncatedSumSpec {
        bracket: Some(BracketFactor { u: 2 * s, v: a, s: 1 }),
        pochhammers,
        qpower: QPowerFactor::linear(z),
        k_from: 0,
        k_to: n,
    };
    spec.validate()?;
    let sum = spec.sum_over_common_denominator()?;
    let fix = RationalFunction::new(LaurentPoly::one_minus_q_pow(1), LaurentPoly::one_minus_q_pow(a))?;
    Ok(&sum * &fix)
}

/// `Σ_{k=0}^{n} (q^{num}; q^s)_k / (q^{den}; q^s)_k q^{zk}`; `den` includes the `(q^s; q^s)_k`.
fn plain_terminating(num: &[i64], den: &[i64], z: i64, s: i64, n: i64) -> Result<RationalFunction> {
    let mut pochhammers: Vec<_> = num.iter().map(|&x| QPochhammerFactor::new(x, s, 1)).collect();
    pochhammers.extend(den.iter().map(|&x| QPochhammerFactor::new(x, s, -1)));
    let spec = TruncatedSumSpec { bracket: None, pochhammers, qpower: QPowerFactor::linear(z), k_from: 0, k_to: n };
    spec.validate()?;
    spec.sum_over_common_denominator()
}

fn check_length(n: i64) -> Result<()> {
    if n < 0 {
        return Err(Error::InvalidSpec(format!("termination index must be nonnegative; got {n}")));
    }
    Ok(())
}

/// `₆φ₅[a, q√a, -q√a, b, c, q^{-n}; …; q, aq^{n+1}/bc] = (aq, aq/bc)_n / (aq/b, aq/c)_n`, base `q^s`.
pub fn check_6phi5_terminating(a: i64, b: i64, c: i64, n: i64, s: i64) -> Result<bool> {
    check_base(s)?;
    check_length(n)?;
    let lhs = vwp_terminating(a, &[b, c, -s * n], a + s * (n + 1) - b - c, s, n)?;
    let rhs = poch_ratio(&[a + s, a + s - b - c], &[a + s - b, a + s - c], s, n)?;
    Ok(lhs == rhs)
}

/// Watson's transformation of a terminating very-well-poised `₈φ₇` into a balanced `₄φ₃`.
pub fn check_watson_8phi7(a: i64, b: i64, c: i64, d: i64, e: i64, n: i64, s: i64) -> Result<bool> {
    check_base(s)?;
    check_length(n)?;
    let lhs = watson_lhs(a, b, c, d, e, n, s)?;
    let pre = poch_ratio(&[a + s, a + s - d - e], &[a + s - d, a + s - e], s, n)?;
    let phi43 = plain_terminating(&[a + s - b - c, d, e, -s * n], &[s, a + s - b, a + s - c, d + e - s * n - a], s, s, n)?;
    Ok(lhs == &pre * &phi43)
}

fn watson_lhs(a: i64, b: i64, c: i64, d: i64, e: i64, n: i64, s: i64) -> Result<RationalFunction> {
    vwp_terminating(a, &[b, c, d, e, -s * n], 2 * a + s * (n + 2) - b - c - d - e, s, n)
}

fn andrews_lhs(a: i64, b: &[i64], c: &[i64], n: i64, s: i64) -> Result<RationalFunction> {
    let m = b.len() as i64;
    let mut xs: Vec<i64> = b.iter().zip(c).flat_map(|(&x, &y)| [x, y]).collect();
    xs.push(-s * n);
    let z = m * a + s * (m + n) - b.iter().sum::<i64>() - c.iter().sum::<i64>();
    vwp_terminating(a, &xs, z, s, n)
}

/// Compositions `(l_1, …, l_len)` of nonnegative integers with sum at most `bound`.
fn bounded_tuples(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            let used: i64 = t.iter().sum();
            for l in 0..=bound - used {
                let mut u = t.clone();
                u.push(l);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Andrews' transformation with `m` pairs `(b_i, c_i)`; `m = 2` is Watson's formula.
pub fn check_andrews(m: usize, a: i64, b: &[i64], c: &[i64], n: i64, s: i64) -> Result<bool> {
    check_base(s)?;
    check_length(n)?;
    if m == 0 || b.len() != m || c.len() != m {
        return Err(Error::InvalidSpec(format!("need m ≥ 1 pairs; got m = {m}, {} b's, {} c's", b.len(), c.len())));
    }
    let lhs = andrews_lhs(a, b, c, n, s)?;
    let (bm, cm) = (b[m - 1], c[m - 1]);
    let pre = poch_ratio(&[a + s, a + s - bm - cm], &[a + s - bm, a + s - cm], s, n)?;
    let mut total = RationalFunction::zero();
    for l in bounded_tuples(m - 1, n) {
        let partial: Vec<i64> = l.iter().scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        }).collect();
        let mut num = LaurentPoly::one();
        let mut den = LaurentPoly::one();
        let mut exp = 0;
        for i in 0..m - 1 {
            num = &num * &pochhammer(a + s - b[i] - c[i], s, l[i]);
            den = &den * &pochhammer(s, s, l[i]);
            num = &num * &poch_product(&[b[i + 1], c[i + 1]], s, partial[i]);
            den = &den * &poch_product(&[a + s - b[i], a + s - c[i]], s, partial[i]);
        }
        if let Some(&last) = partial.last() {
            num = &num * &pochhammer(-s * n, s, last);
            den = &den * &pochhammer(bm + cm - s * n - a, s, last);
            exp += s * last;
            for i in 0..m.saturating_sub(2) {
                exp += (a + s - b[i + 1] - c[i + 1]) * partial[i];
            }
        }
        if den.is_zero() {
            return Err(vanishing(format!("multisum term at l = {l:?}")));
        }
        if num.is_zero() {
            continue;
        }
        total = &total + &RationalFunction::new(num.shift(exp), den)?;
    }
    Ok(lhs == &pre * &total)
}

/// `Σ_k (1 - q^{uk+v}) Π (±q^{x}; q^s)_k / Π (±q^{y}; q^s)_k q^{zk}` as a Laurent series.
#[derive(Debug, Clone)]
struct SeriesSum {
    s: i64,
    bracket: Option<(i64, i64)>,
    num: Vec<Binomial>,
    den: Vec<Binomial>,
    z: i64,
}

fn shifted(b: Binomial, by: i64) -> Binomial {
    Binomial { exp: b.exp + by, plus: b.plus }
}

impl SeriesSum {
    /// First `k` after which the running product is identically zero.
    fn termination(&self) -> Option<i64> {
        self.num
            .iter()
            .filter(|b| !b.plus && b.exp <= 0 && b.exp % self.s == 0)
            .map(|b| -b.exp / self.s + 1)
            .min()
    }

    fn expand(&self, order: i64, work: i64) -> Result<TruncatedSeries> {
        let stop = self.termination();
        if stop.is_none() && self.z < 1 {
            return Err(Error::InvalidSpec(format!("argument exponent {} < 1: not a formal series", self.z)));
        }
        if let Some(u) = self.bracket.map(|b| b.0) {
            if u < 0 {
                return Err(Error::InvalidSpec("bracket must grow with k".into()));
            }
        }
        // from k0 on every factor has positive exponent, so valuations grow by z per step
        let lowest = self
            .num
            .iter()
            .chain(&self.den)
            .map(|b| b.exp)
            .chain(self.bracket.map(|b| b.1))
            .min()
            .unwrap_or(1);
        let k0 = if lowest > 0 { 0 } else { (1 - lowest + self.s - 1) / self.s };
        let mut p = TruncatedSeries::one(work);
        let mut total = TruncatedSeries::zero(work);
        let mut k = 0;
        loop {
            if stop.is_some_and(|t| k >= t) {
                break;
            }
            if stop.is_none() && k >= k0 && p.valuation() > order {
                // later terms still reach exponents above `order`
                return Ok(total.truncate(total.order().min(order)));
            }
            let term = match self.bracket {
                Some((u, v)) => p.mul_poly(&LaurentPoly::one_minus_q_pow(u * k + v)),
                None => p.clone(),
            };
            total = total.add(&term);
            for &b in &self.num {
                p = p.mul_poly(&shifted(b, self.s * k).to_poly());
            }
            for &b in &self.den {
                let f = shifted(b, self.s * k);
                if f.exp == 0 && !f.plus {
                    return Err(vanishing(format!("(q^{}; q^{})_k at k = {}", b.exp, self.s, k + 1)));
                }
                p = p.div_poly(&f.to_poly())?;
            }
            p = p.mul_poly(&LaurentPoly::q_pow(self.z));
            k += 1;
        }
        Ok(total)
    }
}

/// `Π_{j≥0} (1 ∓ q^{x + sj})` to the given order; finitely many factors may have `x + sj ≤ 0`.
fn infinite_product(b: Binomial, s: i64, work: i64) -> TruncatedSeries {
    let mut p = TruncatedSeries::one(work);
    let mut j = 0;
    loop {
        let f = shifted(b, s * j);
        if f.exp > 0 && (p.is_zero() || p.valuation() + f.exp > p.order()) {
            return p;
        }
        p = p.mul_poly(&f.to_poly());
        j += 1;
    }
}

/// `Π num (±q^x; q^s)_∞ / Π den (±q^y; q^s)_∞`.
fn product_quotient(num: &[Binomial], den: &[Binomial], s: i64, work: i64) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(work);
    for &b in num {
        out = out.mul(&infinite_product(b, s, work));
    }
    for &b in den {
        if !b.plus && b.exp <= 0 && b.exp % s == 0 {
            return Err(vanishing(format!("(q^{}; q^{s})_∞", b.exp)));
        }
        out = out.mul(&infinite_product(b, s, work).inverse()?);
    }
    Ok(out)
}

fn minus(exp: i64) -> Binomial {
    Binomial { exp, plus: false }
}

fn plus(exp: i64) -> Binomial {
    Binomial { exp, plus: true }
}

/// Retries with more working precision until both sides reach `order`.
fn series_pair(order: i64, build: impl Fn(i64) -> Result<SeriesPair>) -> Result<SeriesPair> {
    if order < 1 {
        return Err(Error::InvalidSpec(format!("series order must be at least 1; got {order}")));
    }
    let mut work = order + 8;
    for _ in 0..8 {
        let pair = build(work)?;
        let reached = pair.lhs.order().min(pair.rhs.order());
        if reached >= order {
            return Ok(pair);
        }
        work += order - reached + 8;
    }
    Err(Error::InvalidSpec(format!("could not expand both sides to q^{order}")))
}

/// Rogers' nonterminating very-well-poised `₆φ₅` summation in base `q^s`.
pub fn rogers_6phi5_series(a: i64, b: i64, c: i64, d: i64, s: i64, order: i64) -> Result<SeriesPair> {
    check_base(s)?;
    check_a(a)?;
    let z = a + s - b - c - d;
    if z < 1 {
        return Err(Error::InvalidSpec(format!("argument aq/bcd = q^{z} needs exponent at least 1")));
    }
    let aq = a + s;
    series_pair(order, |work| {
        let sum = SeriesSum {
            s,
            bracket: Some((2 * s, a)),
            num: vec![minus(a), minus(b), minus(c), minus(d)],
            den: vec![minus(s), minus(aq - b), minus(aq - c), minus(aq - d)],
            z,
        };
        let lhs = sum.expand(order, work)?.div_poly(&LaurentPoly::one_minus_q_pow(a))?;
        let rhs = product_quotient(
            &[minus(aq), minus(aq - b - c), minus(aq - b - d), minus(aq - c - d)],
            &[minus(aq - b), minus(aq - c), minus(aq - d), minus(z)],
            s,
            work,
        )?;
        Ok(SeriesPair { lhs, rhs })
    })
}

pub fn check_rogers_6phi5_series(a: i64, b: i64, c: i64, d: i64, s: i64, order: i64) -> Result<bool> {
    Ok(rogers_6phi5_series(a, b, c, d, s, order)?.outcome(order)?.holds)
}

/// `Σ [8k+r] (q^r;q^4)_k^4/(q^4;q^4)_k^4 q^{(4-2r)k} = [r] (q^{4+r}, q^{4-r}, q^{4-r}, q^{4-r}; q^4)_∞ / (q^4, q^4, q^4, q^{4-2r}; q^4)_∞`.
pub fn rdid_series(r: i64, order: i64) -> Result<SeriesPair> {
    if r >= 2 {
        return Err(Error::Inadmissible(format!("the identity needs r < 2; got r = {r}")));
    }
    series_pair(order, |work| {
        let sum = SeriesSum { s: 4, bracket: Some((8, r)), num: vec![minus(r); 4], den: vec![minus(4); 4], z: 4 - 2 * r };
        let lhs = sum.expand(order, work)?.div_poly(&LaurentPoly::one_minus_q_pow(1))?;
        let rhs = product_quotient(
            &[minus(4 + r), minus(4 - r), minus(4 - r), minus(4 - r)],
            &[minus(4), minus(4), minus(4), minus(4 - 2 * r)],
            4,
            work,
        )?
        .mul_poly(&q_integer(r, 1));
        Ok(SeriesPair { lhs, rhs })
    })
}

/// `Σ (1+q^{2k+1})/(1+q) (1-q)^2/(1-q^{2k+1})^2 q^k = (q^4, q^2, q^2, q^2; q^2)_∞ / (q^3, q^3, q^3, q; q^2)_∞`.
pub fn sun_euler_series(order: i64) -> Result<SeriesPair> {
    series_pair(order, |work| {
        let sum = SeriesSum {
            s: 2,
            bracket: None,
            num: vec![minus(1), minus(1), plus(3)],
            den: vec![minus(3), minus(3), plus(1)],
            z: 1,
        };
        let lhs = sum.expand(order, work)?;
        let rhs = product_quotient(&[minus(4), minus(2), minus(2), minus(2)], &[minus(3), minus(3), minus(3), minus(1)], 2, work)?;
        Ok(SeriesPair { lhs, rhs })
    })
}

/// Series expansion of a terminating `₆φ₅` left side, for cross-checking the two comparison modes.
pub fn terminating_6phi5_series(a: i64, b: i64, c: i64, n: i64, s: i64, order: i64) -> Result<(TruncatedSeries, TruncatedSeries)> {
    check_base(s)?;
    check_length(n)?;
    check_a(a)?;
    let rhs = poch_ratio(&[a + s, a + s - b - c], &[a + s - b, a + s - c], s, n)?;
    let pair = series_pair(order, |work| {
        let sum = SeriesSum {
            s,
            bracket: Some((2 * s, a)),
            num: vec![minus(a), minus(b), minus(c), minus(-s * n)],
            den: vec![minus(s), minus(a + s - b), minus(a + s - c), minus(a + s + s * n)],
            z: a + s * (n + 1) - b - c,
        };
        let lhs = sum.expand(order, work)?.div_poly(&LaurentPoly::one_minus_q_pow(a))?;
        let rhs = series_of(&rhs, work)?;
        Ok(SeriesPair { lhs, rhs })
    })?;
    Ok((pair.lhs, pair.rhs))
}

/// Residues modulo `Φ_n^2` of `Σ_{k=0}^{(3n-r)/4} [8k+r] (q^r;q^4)_k^4/(q^4;q^4)_k^4 q^{(4-2r)k}` and
/// of `[r] (q^{r+4}, q^{4-3n-r}; q^4)_N / (q^4, q^{4-3n}; q^4)_N`, `N = (3n-r)/4`, agree.
pub fn six_phi_five_mod_square(r: i64, n: i64) -> Result<bool> {
    if r % 2 == 0 || n <= 1 || n % 2 == 0 || (n + r).rem_euclid(4) != 0 || n < r.max(4 - r) {
        return Err(Error::Inadmissible(format!(
            "need odd r, odd n > 1, n ≡ -r (mod 4), n ≥ max(r, 4 - r); got r = {r}, n = {n}"
        )));
    }
    let top = (3 * n - r) / 4;
    let spec = TruncatedSumSpec::well_poised(
        BracketFactor { u: 8, v: r, s: 1 },
        r,
        4,
        4,
        QPowerFactor::linear(4 - 2 * r),
        top,
    );
    let Some(sum) = sum_residue(&spec, n as u64, 2)? else {
        return Ok(false);
    };
    let big = cyclotomic_arc(n as u64)?.pow(2);
    let num = reduced_poch_product(&[r + 4, 4 - 3 * n - r], 4, top, &big)?;
    let num = reduce_laurent(&(&q_integer(r, 1) * &num), &big)?;
    let den = reduced_poch_product(&[4, 4 - 3 * n], 4, top, &big)?;
    let Some(inv) = inverse_mod(&den, &big)? else {
        return Ok(false);
    };
    Ok(rem(&(&num * &inv), &big)? == sum)
}

/// `Π (q^{x}; q^s)_k` modulo `big`, reducing after every factor.
fn reduced_poch_product(xs: &[i64], s: i64, k: i64, big: &LaurentPoly) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    let mut shift = 0;
    for &x in xs {
        for j in 0..k {
            let e = x + s * j;
            let f = if e >= 0 {
                LaurentPoly::one_minus_q_pow(e)
            } else {
                // 1 - q^e = -q^e (1 - q^{-e})
                shift += e;
                -LaurentPoly::one_minus_q_pow(-e)
            };
            acc = rem(&(&acc * &f), big)?;
        }
    }
    reduce_laurent(&acc.shift(shift), big)
}

/// Draws `count` instances with small exponents; draws that hit a vanishing
/// denominator on either side are skipped.
pub fn random_instances(id: IdentityId, count: usize, seed: u64) -> Vec<IdentityInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let inst = draw(id, &mut rng);
        if inst.evaluate().is_ok() {
            out.push(inst);
        }
    }
    out
}

fn nonzero(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let x = rng.gen_range(lo..=hi);
        if x != 0 {
            return x;
        }
    }
}

fn draw(id: IdentityId, rng: &mut ChaCha8Rng) -> IdentityInstance {
    let small = |rng: &mut ChaCha8Rng| rng.gen_range(-4..=6);
    match id {
        IdentityId::SixPhiFiveTerminating => IdentityInstance::SixPhiFive {
            a: nonzero(rng, -4, 6),
            b: small(rng),
            c: small(rng),
            n: rng.gen_range(0..=3),
            base: rng.gen_range(1..=3),
        },
        IdentityId::Watson => IdentityInstance::Watson {
            a: nonzero(rng, -4, 6),
            b: small(rng),
            c: small(rng),
            d: small(rng),
            e: small(rng),
            n: rng.gen_range(0..=3),
            base: rng.gen_range(1..=2),
        },
        IdentityId::Andrews => {
            let m = rng.gen_range(2..=3);
            IdentityInstance::Andrews {
                a: nonzero(rng, -4, 6),
                b: (0..m).map(|_| small(rng)).collect(),
                c: (0..m).map(|_| small(rng)).collect(),
                n: rng.gen_range(0..=3),
                base: rng.gen_range(1..=2),
            }
        }
        IdentityId::Rogers => {
            let base = rng.gen_range(1..=4);
            let a = nonzero(rng, -2, 6);
            let (b, c) = (rng.gen_range(-2..=4), rng.gen_range(-2..=4));
            let z = rng.gen_range(1..=3);
            IdentityInstance::Rogers { a, b, c, d: a + base - b - c - z, base, order: 40 }
        }
        IdentityId::Rdid => IdentityInstance::Rdid { r: 1 - 2 * rng.gen_range(0..=4), order: 40 },
        IdentityId::SunEuler => IdentityInstance::SunEuler { order: 40 },
    }
}

#[cfg(test)]
mod tests;
