//! Exact integer and rational arithmetic, p-adic valuations and rational
//! congruences modulo prime powers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Rational from a numerator/denominator pair of machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from a machine integer.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"` into a normalized rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Deterministic primality by trial division.
pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn require_prime(p: i64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// A p-adic valuation: finite, or `Infinite` for zero.
///
/// `Infinite` orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

fn integer_valuation(x: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!x.is_zero());
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// v_p(x) = v_p(numerator) - v_p(denominator); zero has infinite valuation.
pub fn padic_valuation(x: &Rational, p: i64) -> Result<Valuation> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    Ok(Valuation::Finite(
        integer_valuation(x.numer(), &p) - integer_valuation(x.denom(), &p),
    ))
}

/// x ≡ y (mod p^k) for rationals, i.e. v_p(x - y) ≥ k.
pub fn congruent_mod_prime_power(x: &Rational, y: &Rational, p: i64, k: i64) -> Result<bool> {
    Ok(padic_valuation(&(x - y), p)?.at_least(k))
}

/// Binomial coefficient C(m, i) for any integer m and i ≥ 0.
pub fn binomial(m: i64, i: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..i as i64 {
        acc *= BigInt::from(m - j);
    }
    let mut fact = BigInt::one();
    for j in 1..=i as i64 {
        fact *= BigInt::from(j);
    }
    acc / fact
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&int(0), 5).unwrap(), Valuation::Infinite);
        assert_eq!(padic_valuation(&rat(50, 3), 5).unwrap(), Valuation::Finite(2));
        assert_eq!(
            padic_valuation(&rat(2673, 524288), 3).unwrap(),
            Valuation::Finite(5)
        );
        assert_eq!(padic_valuation(&rat(3, 50), 5).unwrap(), Valuation::Finite(-2));
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(padic_valuation(&int(4), 4), Err(Error::NotPrime(4)));
        assert_eq!(padic_valuation(&int(4), 1), Err(Error::NotPrime(1)));
        assert!(congruent_mod_prime_power(&int(1), &int(1), 9, 1).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(congruent_mod_prime_power(&rat(1, 4), &rat(1, 4), 7, 6).unwrap());
        assert!(congruent_mod_prime_power(&rat(2673, 524288), &int(0), 3, 3).unwrap());
        assert!(!congruent_mod_prime_power(&rat(2673, 524288), &rat(-27, 8), 3, 5).unwrap());
        assert_eq!(
            padic_valuation(&(rat(2673, 524288) + rat(27, 8)), 3).unwrap(),
            Valuation::Finite(3)
        );
    }

    #[test]
    fn infinite_valuation_is_maximal() {
        assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
        assert!(Valuation::Infinite.at_least(1_000_000));
    }

    #[test]
    fn primality() {
        let primes: Vec<i64> = (0..40).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(9973));
        assert!(!is_prime(9971));
    }

    #[test]
    fn normalization_puts_sign_in_numerator() {
        let x = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(parse_rational("-3/2").unwrap(), x);
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn helpers() {
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(totient(12), 4);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
