use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, int, Rational};

/// Sparse Laurent polynomial in `q` with rational coefficients.
///
/// Zero coefficients are never stored, so the empty map is the zero
/// polynomial and `min_exp`/`max_exp` always name nonzero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `1 - q^exp`, the building block of every q-shifted factorial.
    pub fn one_minus_q_pow(exp: i64) -> Self {
        Self::from_terms([(0, int(1)), (exp, int(-1))])
    }

    /// `1 + q^exp`.
    pub fn one_plus_q_pow(exp: i64) -> Self {
        Self::from_terms([(0, int(1)), (exp, int(1))])
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Dense integer coefficients starting at exponent `offset`.
    pub fn from_coeffs(offset: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (offset + i as i64, int(c))),
        )
    }

    /// Dense rational coefficients starting at exponent `offset`.
    pub fn from_dense(offset: i64, coeffs: Vec<Rational>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + i as i64, c))
            .collect();
        Self { coeffs }
    }

    /// `(offset, coefficients)` covering `min_exp..=max_exp`; zero gives `(0, [])`.
    pub fn to_dense(&self) -> (i64, Vec<Rational>) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Degree of a genuine polynomial; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.max_exp()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^{-min_exp}` so the result is a polynomial with nonzero
    /// constant term; returns the applied shift.
    pub fn normalize_shift(&self) -> (Self, i64) {
        match self.min_exp() {
            Some(m) => (self.shift(-m), -m),
            None => (Self::zero(), 0),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies in place by `1 - c q^exp` (or `1 + q^exp` with `c = -1`).
    pub fn mul_binomial_assign(&mut self, exp: i64, c: &Rational) {
        let shifted: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .map(|(e, x)| (e + exp, -(x * c)))
            .collect();
        for (e, x) in shifted {
            self.add_term(e, x);
        }
    }

    /// Evaluates at a nonzero rational point (or any point for a genuine polynomial).
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        acc
    }

    /// Formal derivative in `q`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, c)| (e - 1, c * int(*e))),
        )
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (alo, ahi) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let (blo, bhi) = (other.min_exp().unwrap(), other.max_exp().unwrap());
        let span = (ahi - alo + bhi - blo + 1) as u128;
        let work = self.len() as u128 * other.len() as u128;
        let integral = self.coeffs.values().all(|c| c.is_integer()) && other.coeffs.values().all(|c| c.is_integer());
        if integral && span <= 4 * work + 64 {
            let lo = alo + blo;
            let b: Vec<(i64, BigInt)> = other.coeffs.iter().map(|(e, c)| (*e, c.to_integer())).collect();
            let mut acc = vec![BigInt::zero(); span as usize];
            for (ea, ca) in &self.coeffs {
                let ca = ca.to_integer();
                for (eb, cb) in &b {
                    acc[(ea + eb - lo) as usize] += &ca * cb;
                }
            }
            return Self::from_dense(lo, acc.into_iter().map(Rational::from_integer).collect());
        }
        if span <= 4 * work + 64 {
            let lo = alo + blo;
            let mut acc = vec![Rational::zero(); span as usize];
            for (ea, ca) in &self.coeffs {
                for (eb, cb) in &other.coeffs {
                    acc[(ea + eb - lo) as usize] += ca * cb;
                }
            }
            Self::from_dense(lo, acc)
        } else {
            let mut out = Self::zero();
            for (ea, ca) in &self.coeffs {
                for (eb, cb) in &other.coeffs {
                    out.add_term(ea + eb, ca * cb);
                }
            }
            out
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.coeffs.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c.clone());
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.mul_impl(rhs);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(mut self, rhs: LaurentPoly) -> LaurentPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(mut self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                let mut out = self.clone();
                out.$assign(&rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);
forward_binop!(Mul, mul, mul_assign);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_examples() {
        let a = LaurentPoly::one_minus_q_pow(1);
        let b = LaurentPoly::one_plus_q_pow(1);
        assert_eq!(&a * &b, LaurentPoly::one_minus_q_pow(2));
        assert_eq!(a.pow(0), LaurentPoly::one());
        assert_eq!(LaurentPoly::zero().pow(0), LaurentPoly::one());
        assert_eq!(LaurentPoly::q_pow(-1) * LaurentPoly::q_pow(1), LaurentPoly::one());
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = LaurentPoly::q_pow(3) - LaurentPoly::q_pow(3);
        assert!(p.is_zero());
        assert_eq!(p.min_exp(), None);
        let p = LaurentPoly::from_coeffs(-2, &[0, 1, 0, 2, 0]);
        assert_eq!(p.len(), 2);
        assert_eq!(p.min_exp(), Some(-1));
        assert_eq!(p.max_exp(), Some(1));
    }

    #[test]
    fn sparse_and_dense_products_agree() {
        let a = LaurentPoly::from_terms([(0, int(1)), (1000, int(2)), (-500, int(3))]);
        let b = LaurentPoly::from_coeffs(-3, &[1, 2, 3, 4, 5]);
        let dense = &b * &b;
        let mut naive = LaurentPoly::zero();
        for (e1, c1) in b.terms() {
            for (e2, c2) in b.terms() {
                naive.add_term(e1 + e2, c1 * c2);
            }
        }
        assert_eq!(dense, naive);
        let sparse = &a * &b;
        assert_eq!(sparse.len(), 15);
        assert_eq!(sparse.coeff(997), int(2));
    }

    #[test]
    fn binomial_multiplication() {
        let mut p = LaurentPoly::one();
        p.mul_binomial_assign(2, &int(1));
        p.mul_binomial_assign(1, &int(-1));
        assert_eq!(
            p,
            LaurentPoly::one_minus_q_pow(2) * LaurentPoly::one_plus_q_pow(1)
        );
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_coeffs(-1, &[-1, 0, 1, 2]);
        assert_eq!(p.to_string(), "-q^-1 + q + 2*q^2");
        assert_eq!(LaurentPoly::one_minus_q_pow(1).to_string(), "1 - q");
    }

    #[test]
    fn evaluation_and_derivative() {
        let p = LaurentPoly::from_coeffs(-1, &[1, 0, 1]);
        assert_eq!(p.eval(&int(2)), crate::arith::rat(5, 2));
        assert_eq!(p.derivative(), LaurentPoly::from_coeffs(-2, &[-1, 0, 1]));
    }
}
