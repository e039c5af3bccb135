//! Truncated formal Laurent series.
//!
//! A [`TruncatedSeries`] knows its coefficients for exponents `offset..=order`
//! and nothing beyond. Validity rules:
//!
//! * `a + b` is valid to `min(order_a, order_b)`.
//! * `a * b` is valid to `min(order_a + val_b, order_b + val_a)`, where `val`
//!   is the lowest exponent with a nonzero coefficient.
//! * multiplying by an exact Laurent polynomial `P` is valid to
//!   `order + min_exp(P)`; dividing by `P` is valid to `order - min_exp(P)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, RationalFunction};
use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    offset: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl TruncatedSeries {
    /// Series known to be exact zero through `order`.
    pub fn zero(order: i64) -> Self {
        Self { offset: order + 1, coeffs: Vec::new(), order }
    }

    pub fn one(order: i64) -> Self {
        Self::from_poly(&LaurentPoly::one(), order)
    }

    /// Builds a series from coefficients at `offset, offset+1, ...`, valid to `order`.
    pub fn new(offset: i64, coeffs: Vec<Rational>, order: i64) -> Self {
        let mut s = Self { offset, coeffs, order };
        s.normalize();
        s
    }

    /// Exact polynomial viewed as a series valid to `order`.
    pub fn from_poly(p: &LaurentPoly, order: i64) -> Self {
        let Some(lo) = p.min_exp() else {
            return Self::zero(order);
        };
        if lo > order {
            return Self::zero(order);
        }
        let mut coeffs = vec![Rational::zero(); (order - lo + 1) as usize];
        for (e, c) in p.terms() {
            if e <= order {
                coeffs[(e - lo) as usize] = c.clone();
            }
        }
        Self::new(lo, coeffs, order)
    }

    fn normalize(&mut self) {
        let width = (self.order - self.offset + 1).max(0) as usize;
        self.coeffs.resize(width, Rational::zero());
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = self.order + 1;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest exponent with a nonzero coefficient; `order + 1` for zero.
    pub fn valuation(&self) -> i64 {
        self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        assert!(exp <= self.order, "coefficient q^{exp} beyond order {}", self.order);
        if exp < self.offset {
            return Rational::zero();
        }
        self.coeffs
            .get((exp - self.offset) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Known part as an exact polynomial.
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_dense(self.offset, self.coeffs.clone())
    }

    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot extend a series beyond its order");
        Self::new(self.offset, self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let lo = self.offset.min(other.offset).min(order + 1);
        let mut coeffs = vec![Rational::zero(); (order - lo + 1).max(0) as usize];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.offset + i as i64;
                if e <= order {
                    coeffs[(e - lo) as usize] += c;
                }
            }
        }
        Self::new(lo, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Self {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.offset).min(other.order + self.offset);
        let lo = self.offset + other.offset;
        if order < lo {
            return Self::zero(order);
        }
        let width = (order - lo + 1) as usize;
        let mut coeffs = vec![Rational::zero(); width];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= width {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(width - i) {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(lo, coeffs, order)
    }

    /// Product with an exact Laurent polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let Some(pmin) = p.min_exp() else {
            return Self::zero(self.order);
        };
        let order = self.order + pmin;
        let lo = self.offset + pmin;
        if order < lo {
            return Self::zero(order);
        }
        let width = (order - lo + 1) as usize;
        let mut coeffs = vec![Rational::zero(); width];
        for (e, c) in p.terms() {
            let shift = (e - pmin) as usize;
            for (i, a) in self.coeffs.iter().enumerate() {
                if i + shift >= width {
                    break;
                }
                coeffs[i + shift] += a * c;
            }
        }
        Self::new(lo, coeffs, order)
    }

    /// Quotient by an exact nonzero Laurent polynomial.
    pub fn div_poly(&self, p: &LaurentPoly) -> Result<Self> {
        let Some(pmin) = p.min_exp() else {
            return Err(Error::ZeroSeriesDenominator);
        };
        let order = self.order - pmin;
        let lo = self.offset - pmin;
        if order < lo {
            return Ok(Self::zero(order));
        }
        let width = (order - lo + 1) as usize;
        let lead = p.coeff(pmin);
        let tail: Vec<(usize, Rational)> = p
            .terms()
            .filter(|(e, _)| *e != pmin)
            .map(|(e, c)| ((e - pmin) as usize, c.clone()))
            .collect();
        let mut out: Vec<Rational> = Vec::with_capacity(width);
        for i in 0..width {
            let mut acc = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            for (j, c) in &tail {
                if *j > i {
                    break;
                }
                acc -= c * &out[i - j];
            }
            out.push(acc / &lead);
        }
        Ok(Self::new(lo, out, order))
    }

    /// Multiplicative inverse; the series must not be zero to its order.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeriesDenominator);
        }
        let v = self.offset;
        // Unknown coefficients beyond the order never reach lower ones.
        let unit = LaurentPoly::from_dense(0, self.coeffs.clone());
        let inv = TruncatedSeries::one(self.order - v).div_poly(&unit)?;
        Ok(Self::new(-v, inv.coeffs, self.order - 2 * v))
    }

    /// Coefficientwise agreement through `order` (both series must reach it).
    pub fn matches_to(&self, other: &Self, order: i64) -> bool {
        if self.order < order || other.order < order {
            return false;
        }
        let a = self.truncate(order);
        let b = other.truncate(order);
        a.offset == b.offset && a.coeffs == b.coeffs
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() || e == 0 {
                write!(f, "{}", format_rational(&mag))?;
                if e != 0 {
                    f.write_str("*")?;
                }
            }
            match e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

/// Expansion of a rational function as a Laurent series valid to `order`.
pub fn series_of(rf: &RationalFunction, order: i64) -> Result<TruncatedSeries> {
    let den = rf.denominator();
    if den.is_zero() {
        return Err(Error::ZeroSeriesDenominator);
    }
    let num = rf.numerator();
    let dmin = den.min_exp().unwrap();
    // num is exact, so take it to the order the quotient needs.
    let num_series = TruncatedSeries::from_poly(num, order + dmin);
    num_series.div_poly(den)
}

/// The truncated infinite product `(q^a; q^d)_∞ = Π_{j≥0} (1 - q^{a + j d})`.
pub fn infinite_pochhammer_series(a: i64, d: i64, order: i64) -> Result<TruncatedSeries> {
    if a <= 0 || d <= 0 {
        return Err(Error::NonFormalProduct { a, d });
    }
    let width = (order + 1).max(0) as usize;
    let mut coeffs = vec![Rational::zero(); width];
    if width > 0 {
        coeffs[0] = Rational::one();
    }
    let mut e = a;
    while e <= order {
        let step = e as usize;
        for i in (step..width).rev() {
            let t = coeffs[i - step].clone();
            if !t.is_zero() {
                coeffs[i] -= t;
            }
        }
        e += d;
    }
    Ok(TruncatedSeries::new(0, coeffs, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn poly(offset: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(offset, c)
    }

    #[test]
    fn series_of_examples() {
        let rf = RationalFunction::new(LaurentPoly::one(), LaurentPoly::one_minus_q_pow(1)).unwrap();
        assert_eq!(series_of(&rf, 3).unwrap().to_poly(), poly(0, &[1, 1, 1, 1]));

        let rf = RationalFunction::new(LaurentPoly::one_minus_q_pow(2), LaurentPoly::one_minus_q_pow(1))
            .unwrap();
        assert_eq!(series_of(&rf, 5).unwrap().to_poly(), poly(0, &[1, 1]));

        let rf = RationalFunction::new(LaurentPoly::q_pow(-1), LaurentPoly::one_minus_q_pow(4)).unwrap();
        let s = series_of(&rf, 7).unwrap();
        assert_eq!(s.to_poly(), poly(-1, &[1, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(s.order(), 7);
    }

    #[test]
    fn shifted_denominator() {
        // q^2 / (q^3 - q^4) = q^-1 / (1 - q)
        let rf = RationalFunction::new(LaurentPoly::q_pow(2), poly(3, &[1, -1])).unwrap();
        let s = series_of(&rf, 2).unwrap();
        assert_eq!(s.to_poly(), poly(-1, &[1, 1, 1, 1]));
    }

    #[test]
    fn infinite_products() {
        let s = infinite_pochhammer_series(1, 1, 5).unwrap();
        assert_eq!(s.to_poly(), poly(0, &[1, -1, -1, 0, 0, 1]));
        let s = infinite_pochhammer_series(4, 4, 3).unwrap();
        assert_eq!(s.to_poly(), LaurentPoly::one());
        let s = infinite_pochhammer_series(3, 4, 7).unwrap();
        assert_eq!(s.to_poly(), poly(0, &[1, 0, 0, -1, 0, 0, 0, -1]));
        assert!(infinite_pochhammer_series(0, 1, 5).is_err());
    }

    #[test]
    fn euler_pentagonal_theorem_to_order_100() {
        let s = infinite_pochhammer_series(1, 1, 100).unwrap();
        let mut expected = LaurentPoly::zero();
        for k in -10i64..=10 {
            let e = k * (3 * k - 1) / 2;
            if e <= 100 {
                expected.add_term(e, int(if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        assert_eq!(s.to_poly(), expected);
    }

    #[test]
    fn validity_orders() {
        let a = TruncatedSeries::from_poly(&poly(0, &[1, 1]), 10);
        let b = TruncatedSeries::from_poly(&poly(-2, &[1]), 4);
        assert_eq!(a.mul(&b).order(), 8.min(4));
        assert_eq!(a.add(&b).order(), 4);
        assert_eq!(a.mul_poly(&LaurentPoly::q_pow(-3)).order(), 7);
        let inv = TruncatedSeries::from_poly(&poly(2, &[1, 1]), 10).inverse().unwrap();
        assert_eq!(inv.order(), 6);
        assert_eq!(inv.valuation(), -2);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = TruncatedSeries::from_poly(&poly(-1, &[2, 3, 0, 5]), 20);
        let prod = a.mul(&a.inverse().unwrap());
        assert!(prod.matches_to(&TruncatedSeries::one(prod.order()), prod.order()));
    }
}
