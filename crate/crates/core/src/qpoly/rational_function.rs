use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::division::{exact_div, poly_gcd};
use super::LaurentPoly;
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials, not necessarily reduced.
///
/// Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPoly, LaurentPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Cancels the polynomial gcd and powers of `q`; the denominator ends up
    /// with constant term one.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let (n, sn) = self.num.normalize_shift();
        let (d, sd) = self.den.normalize_shift();
        let g = poly_gcd(&n, &d).expect("nonzero inputs");
        let n = exact_div(&n, &g).unwrap().expect("gcd divides");
        let d = exact_div(&d, &g).unwrap().expect("gcd divides");
        let c = d.coeff(0).recip();
        Self { num: n.shift(sd - sn).scale(&c), den: d.scale(&c) }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        // when one denominator divides the other a single short product suffices
        let (a, b) = if self.den.len() <= other.den.len() { (self, other) } else { (other, self) };
        let (da, sa) = a.den.normalize_shift();
        let (db, sb) = b.den.normalize_shift();
        if let Ok(Some(c)) = exact_div(&db, &da) {
            return &a.num.shift(sa - sb) * &c == b.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RationalFunction {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_by_cross_multiplication() {
        let a = RationalFunction::new(
            LaurentPoly::one_minus_q_pow(2),
            LaurentPoly::one_minus_q_pow(1),
        )
        .unwrap();
        let b = RationalFunction::from_poly(LaurentPoly::one_plus_q_pow(1));
        assert_eq!(a, b);
        assert_eq!(a.reduced().numerator(), b.numerator());
        let c = RationalFunction::new(LaurentPoly::q_pow(-2), LaurentPoly::q_pow(-3) - LaurentPoly::q_pow(-2)).unwrap();
        let d = RationalFunction::new(
            &LaurentPoly::q_pow(1) * &LaurentPoly::one_plus_q_pow(1),
            LaurentPoly::one_minus_q_pow(2),
        )
        .unwrap();
        assert_eq!(c, d);
        assert_ne!(c, RationalFunction::new(LaurentPoly::q_pow(1), LaurentPoly::one_minus_q_pow(2)).unwrap());
        assert!(RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn arithmetic() {
        let x = RationalFunction::new(LaurentPoly::one(), LaurentPoly::one_minus_q_pow(1)).unwrap();
        let y = RationalFunction::new(LaurentPoly::q_pow(1), LaurentPoly::one_minus_q_pow(1)).unwrap();
        assert_eq!(&x - &y, RationalFunction::one());
        assert_eq!((&x / &x).unwrap(), RationalFunction::one());
        let r = RationalFunction::new(LaurentPoly::q_pow(3), LaurentPoly::q_pow(5)).unwrap().reduced();
        assert_eq!(r.numerator(), &LaurentPoly::q_pow(-2));
        assert_eq!(r.denominator(), &LaurentPoly::one());
    }
}
