//! Numeric cross-check at primitive roots of unity.
//!
//! Everything is evaluated at `q = ζ + ε` as a truncated Taylor jet in `ε`,
//! in high-precision complex floating point. `Φ_n^e` divides a polynomial iff
//! the first `e` jet coefficients vanish at every primitive `n`-th root `ζ`.
//! Which binomial factors `1 ∓ q^x` vanish at `ζ` is decided by exact index
//! arithmetic, so pole orders never depend on rounding.
//!
//! Zero tests are relative to the largest magnitude seen while accumulating:
//! below `scale · 10^{-digits/2}` counts as zero, above `scale · 10^{-digits/4}`
//! as nonzero, and anything in between is reported as ambiguous.

use std::cell::Cell;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use crate::arith::{binomial, gcd_i64, Rational};
use crate::error::{Error, Result};
use crate::qpoly::LaurentPoly;
use crate::qseries::{Binomial, BracketMode, SumPlan, SumRing, TruncatedSumSpec};

const RM: RoundingMode = RoundingMode::ToEven;
const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// What the oracle concluded for one modulus factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOutcome {
    Holds,
    Fails,
    Undefined,
}

#[derive(Clone, Debug)]
struct Complex {
    re: BigFloat,
    im: BigFloat,
}

struct Field {
    p: usize,
}

impl Field {
    fn zero(&self) -> Complex {
        Complex { re: BigFloat::from_i64(0, self.p), im: BigFloat::from_i64(0, self.p) }
    }

    fn real(&self, x: BigFloat) -> Complex {
        Complex { re: x, im: BigFloat::from_i64(0, self.p) }
    }

    fn add(&self, a: &Complex, b: &Complex) -> Complex {
        Complex { re: a.re.add(&b.re, self.p, RM), im: a.im.add(&b.im, self.p, RM) }
    }

    fn sub(&self, a: &Complex, b: &Complex) -> Complex {
        Complex { re: a.re.sub(&b.re, self.p, RM), im: a.im.sub(&b.im, self.p, RM) }
    }

    fn mul(&self, a: &Complex, b: &Complex) -> Complex {
        let p = self.p;
        let re = a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM);
        let im = a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM);
        Complex { re, im }
    }

    fn scale(&self, a: &Complex, s: &BigFloat) -> Complex {
        Complex { re: a.re.mul(s, self.p, RM), im: a.im.mul(s, self.p, RM) }
    }

    fn div(&self, a: &Complex, b: &Complex) -> Complex {
        let p = self.p;
        let norm = b.re.mul(&b.re, p, RM).add(&b.im.mul(&b.im, p, RM), p, RM);
        let conj = Complex { re: b.re.clone(), im: b.im.neg() };
        let num = self.mul(a, &conj);
        Complex { re: num.re.div(&norm, p, RM), im: num.im.div(&norm, p, RM) }
    }

    fn neg(&self, a: &Complex) -> Complex {
        Complex { re: a.re.neg(), im: a.im.neg() }
    }

    fn from_bigint(&self, x: &BigInt) -> BigFloat {
        let (sign, digits) = x.to_u64_digits();
        let base = BigFloat::from_u64(u64::MAX, self.p).add(&BigFloat::from_i64(1, self.p), self.p, RM);
        let mut acc = BigFloat::from_i64(0, self.p);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, self.p, RM).add(&BigFloat::from_u64(*d, self.p), self.p, RM);
        }
        if sign == Sign::Minus {
            acc.neg()
        } else {
            acc
        }
    }

    fn from_rational(&self, x: &Rational) -> BigFloat {
        let n = self.from_bigint(x.numer());
        if x.denom() == &BigInt::from(1) {
            n
        } else {
            n.div(&self.from_bigint(x.denom()), self.p, RM)
        }
    }
}

/// Binary exponent of the larger component, `None` for exact zero.
fn magnitude(c: &Complex) -> Option<i64> {
    let e = |x: &BigFloat| if x.is_zero() { None } else { x.exponent().map(i64::from) };
    match (e(&c.re), e(&c.im)) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
    }
}

/// Powers of `ω = e^{2πi/n}`.
fn root_table(n: u64, p: usize) -> Result<Vec<Complex>> {
    let mut cc = Consts::new().map_err(|e| Error::OracleAmbiguous { digits: 0, detail: format!("{e:?}") })?;
    let two_pi = cc.pi(p, RM).mul(&BigFloat::from_i64(2, p), p, RM);
    let nf = BigFloat::from_u64(n, p);
    let mut table = Vec::with_capacity(n as usize);
    for j in 0..n {
        if j == 0 {
            table.push(Complex { re: BigFloat::from_i64(1, p), im: BigFloat::from_i64(0, p) });
            continue;
        }
        let angle = two_pi.mul(&BigFloat::from_u64(j, p), p, RM).div(&nf, p, RM);
        table.push(Complex { re: angle.cos(p, RM, &mut cc), im: angle.sin(p, RM, &mut cc) });
    }
    Ok(table)
}

/// One primitive root per conjugate pair: coefficients are rational, so the jet
/// at `ζ^{n-k}` is the conjugate of the jet at `ζ^k`.
fn primitive_indices(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..=n / 2).filter(|&k| gcd_i64(k as i64, n as i64) == 1).collect()
}

/// A truncated Laurent jet `ε^val (c_0 + c_1 ε + …)`; empty `c` is zero.
#[derive(Clone, Debug)]
pub struct Jet {
    val: i64,
    c: Vec<Complex>,
}

struct JetRing<'a> {
    field: Field,
    table: &'a [Complex],
    n: u64,
    k: u64,
    width: usize,
    scale: Cell<Option<i64>>,
}

impl JetRing<'_> {
    fn zeta_pow(&self, x: i64) -> &Complex {
        let idx = ((self.k as i128 * x as i128).rem_euclid(self.n as i128)) as usize;
        &self.table[idx]
    }

    fn note(&self, c: &Complex) {
        if let Some(m) = magnitude(c) {
            let cur = self.scale.get();
            if cur.is_none_or(|s| m > s) {
                self.scale.set(Some(m));
            }
        }
    }

    /// Coefficients of `(ζ + ε)^x`, `count` of them.
    fn q_pow_coeffs(&self, x: i64, count: usize) -> Vec<Complex> {
        (0..count)
            .map(|i| {
                let b = binomial(x, i as u32);
                if b.is_zero() {
                    self.field.zero()
                } else {
                    let z = self.zeta_pow(x - i as i64);
                    self.field.scale(z, &self.field.from_bigint(&b))
                }
            })
            .collect()
    }

    fn binomial_jet(&self, b: Binomial) -> Jet {
        if b.exp == 0 && !b.plus {
            return Jet { val: 0, c: Vec::new() };
        }
        let n = self.n as i64;
        let vanishes = if b.plus {
            b.exp % n != 0 && (2 * b.exp) % n == 0
        } else {
            b.exp % n == 0
        };
        let mut coeffs = self.q_pow_coeffs(b.exp, self.width + 1);
        for c in coeffs.iter_mut() {
            if !b.plus {
                *c = self.field.neg(c);
            }
        }
        let one = self.field.real(BigFloat::from_i64(1, self.field.p));
        if vanishes {
            coeffs.remove(0);
            Jet { val: 1, c: coeffs[..self.width].to_vec() }
        } else {
            coeffs[0] = self.field.add(&one, &coeffs[0]);
            coeffs.truncate(self.width);
            Jet { val: 0, c: coeffs }
        }
    }

    fn mul_jets(&self, a: &Jet, b: &Jet) -> Jet {
        if a.c.is_empty() || b.c.is_empty() {
            return Jet { val: 0, c: Vec::new() };
        }
        let w = self.width;
        let mut out = vec![self.field.zero(); w];
        for i in 0..w {
            for j in 0..w - i {
                let t = self.field.mul(&a.c[i], &b.c[j]);
                out[i + j] = self.field.add(&out[i + j], &t);
            }
        }
        Jet { val: a.val + b.val, c: out }
    }

    /// `a / b`; `b` must have a nonzero leading coefficient.
    fn div_jets(&self, a: &Jet, b: &Jet) -> Jet {
        if a.c.is_empty() {
            return a.clone();
        }
        let w = self.width;
        let mut out: Vec<Complex> = Vec::with_capacity(w);
        for i in 0..w {
            let mut acc = a.c[i].clone();
            for l in 1..=i {
                let t = self.field.mul(&b.c[l], &out[i - l]);
                acc = self.field.sub(&acc, &t);
            }
            out.push(self.field.div(&acc, &b.c[0]));
        }
        Jet { val: a.val - b.val, c: out }
    }

    fn poly_jet(&self, p: &LaurentPoly) -> Jet {
        let mut acc = Jet { val: 0, c: vec![self.field.zero(); self.width] };
        for (e, c) in p.terms() {
            let cf = self.field.from_rational(c);
            let coeffs = self.q_pow_coeffs(e, self.width);
            for (slot, v) in acc.c.iter_mut().zip(&coeffs) {
                let t = self.field.scale(v, &cf);
                self.note(&t);
                *slot = self.field.add(slot, &t);
            }
        }
        acc
    }
}

impl SumRing for JetRing<'_> {
    type Elem = Jet;

    fn zero(&self) -> Jet {
        Jet { val: 0, c: Vec::new() }
    }

    fn one(&self) -> Jet {
        let mut c = vec![self.field.zero(); self.width];
        c[0] = self.field.real(BigFloat::from_i64(1, self.field.p));
        Jet { val: 0, c }
    }

    fn mul_binomial(&self, x: &mut Jet, b: Binomial) {
        if x.c.is_empty() {
            return;
        }
        *x = self.mul_jets(x, &self.binomial_jet(b));
    }

    fn mul_q_pow(&self, x: &Jet, exp: i64) -> Jet {
        if x.c.is_empty() || exp == 0 {
            return x.clone();
        }
        let qp = Jet { val: 0, c: self.q_pow_coeffs(exp, self.width) };
        self.mul_jets(x, &qp)
    }

    fn mul_poly(&self, x: &Jet, p: &LaurentPoly) -> Jet {
        let pj = self.poly_jet(p);
        self.mul_jets(x, &pj)
    }

    fn neg(&self, x: &Jet) -> Jet {
        Jet { val: x.val, c: x.c.iter().map(|c| self.field.neg(c)).collect() }
    }

    fn add_assign(&self, x: &mut Jet, y: &Jet) {
        if y.c.is_empty() {
            return;
        }
        if x.c.is_empty() {
            *x = y.clone();
            y.c.iter().for_each(|c| self.note(c));
            return;
        }
        let lo = x.val.min(y.val);
        let w = self.width;
        let mut out = vec![self.field.zero(); w];
        for src in [&*x, y] {
            let off = (src.val - lo) as usize;
            for (i, c) in src.c.iter().enumerate() {
                if i + off < w {
                    self.note(c);
                    out[i + off] = self.field.add(&out[i + off], c);
                }
            }
        }
        *x = Jet { val: lo, c: out };
    }
}

fn precision_bits(digits: u32) -> usize {
    (digits as f64 * BITS_PER_DIGIT).ceil() as usize + 64
}

#[derive(Clone, Copy)]
enum Zeroness {
    Zero,
    NonZero,
    Ambiguous,
}

fn classify(c: &Complex, scale: Option<i64>, digits: u32) -> Zeroness {
    let Some(m) = magnitude(c) else { return Zeroness::Zero };
    let Some(s) = scale else { return Zeroness::NonZero };
    let zero_below = s - (digits as f64 * BITS_PER_DIGIT / 2.0) as i64;
    let nonzero_above = s - (digits as f64 * BITS_PER_DIGIT / 4.0) as i64;
    if m < zero_below {
        Zeroness::Zero
    } else if m > nonzero_above {
        Zeroness::NonZero
    } else {
        Zeroness::Ambiguous
    }
}

fn judge(jet: &Jet, order: i64, scale: Option<i64>, digits: u32, what: &str) -> Result<OracleOutcome> {
    let mut outcome = OracleOutcome::Holds;
    for (i, c) in jet.c.iter().enumerate() {
        let pos = jet.val + i as i64;
        if pos >= order {
            break;
        }
        match classify(c, scale, digits) {
            Zeroness::Zero => {}
            Zeroness::NonZero if pos < 0 => return Ok(OracleOutcome::Undefined),
            Zeroness::NonZero => outcome = OracleOutcome::Fails,
            Zeroness::Ambiguous => {
                return Err(Error::OracleAmbiguous {
                    digits,
                    detail: format!("{what}: jet coefficient of order {pos} is in the gray zone"),
                })
            }
        }
    }
    Ok(outcome)
}

/// True iff `P` (after any q-shift) and its first `e - 1` derivatives vanish
/// at every primitive `n`-th root of unity.
pub fn root_of_unity_oracle(p: &LaurentPoly, n: u64, e: u32, digits: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroCyclotomicIndex);
    }
    if p.is_zero() {
        return Ok(true);
    }
    let digits = digits.max(60);
    let field = Field { p: precision_bits(digits) };
    let table = root_table(n, field.p)?;
    let (p, _) = p.normalize_shift();
    let coeffs: Vec<(i64, BigFloat)> = p.terms().map(|(e, c)| (e, field.from_rational(c))).collect();
    let width = e as usize;
    for k in primitive_indices(n) {
        let ring = JetRing { field: Field { p: field.p }, table: &table, n, k, width, scale: Cell::new(None) };
        // Horner in q with jets: acc <- acc (ζ + ε) + c
        let zeta = table[k as usize % table.len()].clone();
        let mut acc = vec![field.zero(); width];
        let deg = p.degree().unwrap();
        let mut it = coeffs.iter().rev().peekable();
        for exp in (0..=deg).rev() {
            let mut next = vec![field.zero(); width];
            for i in 0..width {
                next[i] = field.mul(&acc[i], &zeta);
                if i > 0 {
                    next[i] = field.add(&next[i], &acc[i - 1]);
                }
            }
            if let Some((_, c)) = it.next_if(|(e2, _)| *e2 == exp) {
                next[0] = field.add(&next[0], &field.real(c.clone()));
                ring.note(&field.real(c.clone()));
            }
            next.iter().for_each(|c| ring.note(c));
            acc = next;
        }
        let jet = Jet { val: 0, c: acc };
        if judge(&jet, e as i64, ring.scale.get(), digits, "polynomial")? != OracleOutcome::Holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates `Σ spec − rhs` at every primitive `n`-th root and decides
/// whether it vanishes to order `e` there, without expanding any polynomial.
pub fn sum_oracle(spec: &TruncatedSumSpec, rhs: &LaurentPoly, n: u64, e: u32, digits: u32) -> Result<OracleOutcome> {
    if n == 0 {
        return Err(Error::ZeroCyclotomicIndex);
    }
    let mode = match &spec.bracket {
        Some(b) if b.s % n as i64 == 0 => BracketMode::Explicit,
        _ => BracketMode::Binomial,
    };
    let plan = SumPlan::from_spec(spec, mode)?;
    plan_oracle(&plan, rhs, n, e, digits)
}

/// [`sum_oracle`] for an arbitrary plan.
pub fn plan_oracle(plan: &SumPlan, rhs: &LaurentPoly, n: u64, e: u32, digits: u32) -> Result<OracleOutcome> {
    let digits = digits.max(60);
    let j = plan.denominator_multiplicity(n as i64);
    let width = (e + j + 1) as usize;
    let p = precision_bits(digits);
    let table = root_table(n, p)?;
    let mut verdict = OracleOutcome::Holds;
    for k in primitive_indices(n) {
        let ring = JetRing { field: Field { p }, table: &table, n, k, width, scale: Cell::new(None) };
        let (mut num, den) = plan.accumulate(&ring);
        if let Some(s) = plan.bracket_base {
            let b = ring.binomial_jet(Binomial { exp: s, plus: false });
            num = ring.div_jets(&num, &b);
        }
        let f = ring.div_jets(&num, &den);
        let mut scale = ring.scale.get();
        if let (Some(s), Some(d0)) = (scale, den.c.first().and_then(magnitude)) {
            scale = Some(s - d0);
        }
        let r = ring.poly_jet(rhs);
        if let Some(m) = r.c.iter().filter_map(magnitude).max() {
            scale = Some(scale.map_or(m, |s| s.max(m)));
        }
        let mut g = f;
        ring.add_assign(&mut g, &ring.neg(&r));
        match judge(&g, e as i64, scale, digits, "sum")? {
            OracleOutcome::Holds => {}
            OracleOutcome::Undefined => return Ok(OracleOutcome::Undefined),
            OracleOutcome::Fails => verdict = OracleOutcome::Fails,
        }
    }
    Ok(verdict)
}
