//! Cyclotomic polynomials by iterated exact division of `q^n - 1`.
//!
//! Results are cached process-wide behind a read-write lock. Drivers that fan
//! out across threads call [`precompute_cyclotomics`] first so the hot path
//! only ever takes read locks.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::division::exact_div;
use super::LaurentPoly;
use crate::arith::divisors;
use crate::error::{Error, Result};

type Cache = RwLock<HashMap<u64, Arc<LaurentPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn compute(n: u64) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::q_pow(n as i64) - LaurentPoly::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi = cyclotomic_arc(d)?;
        p = exact_div(&p, &phi)?.expect("cyclotomic factor divides q^n - 1");
    }
    Ok(p)
}

/// The n-th cyclotomic polynomial, shared from the cache.
pub fn cyclotomic_arc(n: u64) -> Result<Arc<LaurentPoly>> {
    if n == 0 {
        return Err(Error::ZeroCyclotomicIndex);
    }
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(compute(n)?);
    let mut guard = cache().write().expect("cyclotomic cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(p)))
}

/// The n-th cyclotomic polynomial Φ_n(q).
pub fn cyclotomic(n: u64) -> Result<LaurentPoly> {
    Ok((*cyclotomic_arc(n)?).clone())
}

/// Fills the cache for every index in `indices`.
pub fn precompute_cyclotomics<I: IntoIterator<Item = u64>>(indices: I) -> Result<()> {
    for n in indices {
        cyclotomic_arc(n)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, totient};

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1).unwrap(), LaurentPoly::from_coeffs(0, &[-1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), LaurentPoly::from_coeffs(0, &[1, 1, 1]));
        assert_eq!(
            cyclotomic(12).unwrap(),
            LaurentPoly::from_coeffs(0, &[1, 0, -1, 0, 1])
        );
        assert_eq!(cyclotomic(0), Err(Error::ZeroCyclotomicIndex));
    }

    #[test]
    fn phi12_by_quotient_of_binomials() {
        let num = (LaurentPoly::q_pow(12) - LaurentPoly::one()) * (LaurentPoly::q_pow(2) - LaurentPoly::one());
        let den = (LaurentPoly::q_pow(6) - LaurentPoly::one()) * (LaurentPoly::q_pow(4) - LaurentPoly::one());
        assert_eq!(exact_div(&num, &den).unwrap(), Some(cyclotomic(12).unwrap()));
    }

    #[test]
    fn product_over_divisors_is_q_n_minus_one() {
        for n in 1..=60u64 {
            let mut prod = LaurentPoly::one();
            for d in divisors(n) {
                prod = &prod * &cyclotomic(d).unwrap();
            }
            assert_eq!(prod, LaurentPoly::q_pow(n as i64) - LaurentPoly::one(), "n = {n}");
        }
    }

    #[test]
    fn value_at_zero_degree_and_integrality() {
        assert_eq!(cyclotomic(1).unwrap().coeff(0), int(-1));
        for n in 2..=60u64 {
            let phi = cyclotomic(n).unwrap();
            assert_eq!(phi.coeff(0), int(1), "n = {n}");
            assert_eq!(phi.degree(), Some(totient(n) as i64));
            assert!(phi.is_integral());
            assert_eq!(phi.leading_coeff(), Some(&int(1)));
        }
    }
}
