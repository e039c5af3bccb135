//! Classical division with remainder, exact division and gcd over the rationals.
//!
//! All routines here work on genuine polynomials. Callers holding Laurent
//! polynomials shift by a power of `q` first (see [`LaurentPoly::normalize_shift`]).

use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::arith::Rational;
use crate::error::{Error, Result};

fn dense_poly(p: &LaurentPoly) -> Result<Vec<Rational>> {
    match p.min_exp() {
        None => Ok(Vec::new()),
        Some(m) if m < 0 => Err(Error::NegativeExponent(m)),
        Some(_) => {
            let hi = p.max_exp().unwrap();
            let mut v = vec![Rational::zero(); hi as usize + 1];
            for (e, c) in p.terms() {
                v[e as usize] = c.clone();
            }
            Ok(v)
        }
    }
}

/// Dense long division; `divisor` must have a nonzero leading entry.
pub(crate) fn divrem_dense(
    mut rem: Vec<Rational>,
    divisor: &[Rational],
) -> (Vec<Rational>, Vec<Rational>) {
    let dm = divisor.len() - 1;
    let lead = &divisor[dm];
    let monic = lead.is_one();
    if rem.len() <= dm {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dm];
    for i in (dm..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = if monic {
            rem[i].clone()
        } else {
            &rem[i] / lead
        };
        let base = i - dm;
        for (j, d) in divisor.iter().enumerate().take(dm) {
            if !d.is_zero() {
                let t = &c * d;
                rem[base + j] -= t;
            }
        }
        rem[i] = Rational::zero();
        quot[base] = c;
    }
    rem.truncate(dm);
    (quot, rem)
}

/// `P = quotient * M + remainder` with `deg(remainder) < deg(M)`.
pub fn divrem(p: &LaurentPoly, m: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if m.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let md = dense_poly(m)?;
    let pd = dense_poly(p)?;
    let (q, r) = divrem_dense(pd, &md);
    Ok((LaurentPoly::from_dense(0, q), LaurentPoly::from_dense(0, r)))
}

/// Remainder of `P` modulo `M`.
pub fn rem(p: &LaurentPoly, m: &LaurentPoly) -> Result<LaurentPoly> {
    Ok(divrem(p, m)?.1)
}

/// The quotient `P / M` when `M` divides `P` exactly.
pub fn exact_div(p: &LaurentPoly, m: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    let (q, r) = divrem(p, m)?;
    Ok(if r.is_zero() { Some(q) } else { None })
}

/// Divides a Laurent polynomial by `1 - q^s` (s ≥ 1), assuming exactness.
///
/// Returns `None` if the division leaves a remainder.
pub fn div_one_minus_q_pow(p: &LaurentPoly, s: i64) -> Option<LaurentPoly> {
    assert!(s >= 1);
    let (lo, mut v) = p.to_dense();
    // Q(1 - q^s) = P  =>  Q_i = P_i + Q_{i-s}.
    let n = v.len();
    for i in 0..n {
        if i >= s as usize {
            let prev = v[i - s as usize].clone();
            if !prev.is_zero() {
                v[i] += prev;
            }
        }
    }
    // The quotient has length n - s; the top s entries must vanish.
    if n < s as usize {
        return if p.is_zero() { Some(LaurentPoly::zero()) } else { None };
    }
    if v[n - s as usize..].iter().any(|c| !c.is_zero()) {
        return None;
    }
    v.truncate(n - s as usize);
    Some(LaurentPoly::from_dense(lo, v))
}

/// Scales a polynomial to leading coefficient one.
pub fn monic(p: &LaurentPoly) -> LaurentPoly {
    match p.leading_coeff() {
        Some(lc) => p.scale(&lc.recip()),
        None => LaurentPoly::zero(),
    }
}

/// Monic gcd over the rationals, after clearing powers of `q` from both inputs.
pub fn poly_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut a, _) = p.normalize_shift();
    let (mut b, _) = q.normalize_shift();
    while !b.is_zero() {
        let r = rem(&a, &b)?;
        a = b;
        b = monic(&r);
    }
    Ok(monic(&a))
}

/// Inverse of `a` modulo `m` (both genuine polynomials), if they are coprime.
pub fn inverse_mod(a: &LaurentPoly, m: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    if m.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let mut r0 = m.clone();
    let mut r1 = rem(a, m)?;
    let mut s0 = LaurentPoly::zero();
    let mut s1 = LaurentPoly::one();
    while !r1.is_zero() {
        // keep remainders monic; it curbs coefficient growth
        let lc = r1.leading_coeff().unwrap().recip();
        r1 = r1.scale(&lc);
        s1 = s1.scale(&lc);
        let (q, r) = divrem(&r0, &r1)?;
        let s = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return Ok(None);
    }
    let c = r0.coeff(0).recip();
    Ok(Some(rem(&s0.scale(&c), m)?))
}
