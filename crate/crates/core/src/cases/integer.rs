//! Exact truncated hypergeometric sums over the rationals.

use num_traits::{One, Pow, Zero};

use crate::arith::{int, rat, Rational};

/// `Σ_{k=0}^{k_to} w(k) ((a)_k / k!)^e`.
pub fn hypergeometric_sum(a: &Rational, e: u32, k_to: i64, weight: impl Fn(i64) -> Rational) -> Rational {
    let mut ratio = Rational::one();
    let mut acc = Rational::zero();
    for k in 0..=k_to {
        if k > 0 {
            ratio = ratio * (a + int(k - 1)) / int(k);
        }
        if ratio.is_zero() {
            break;
        }
        let w = weight(k);
        if !w.is_zero() {
            acc += w * Pow::pow(&ratio, e as i32);
        }
    }
    acc
}

/// The shared summand `(1/(p+1))_k^{p+1} / k!^{p+1}` summed with weight `w(k)` over `k < p`.
pub fn sun_sum(p: i64, weight: impl Fn(i64) -> Rational) -> Rational {
    hypergeometric_sum(&rat(1, p + 1), (p + 1) as u32, p - 1, weight)
}

/// `Σ_{k<p^r} (2k(p^{r+1}-1)/(p^r-1) + 1) (a)_k^E / k!^E` with `a = (p^r-1)/(p^{r+1}-1)`, `E = 2(p^{r+1}-1)/(p-1)`.
pub fn seventh_power_sum(p: i64, r: u32) -> Rational {
    let pr = p.pow(r);
    let pr1 = pr * p;
    let e = 2 * (pr1 - 1) / (p - 1);
    let c = rat(pr1 - 1, pr - 1);
    hypergeometric_sum(&rat(pr - 1, pr1 - 1), e as u32, pr - 1, |k| int(2 * k) * &c + int(1))
}

/// `Σ_{k<p^r} (2k p^r - 2k - 1) (-1/(p^r-1))_k^E / k!^E` with `E = 2p^r - 2`.
pub fn fifth_power_sum(p: i64, r: u32) -> Rational {
    let pr = p.pow(r);
    hypergeometric_sum(&rat(-1, pr - 1), (2 * pr - 2) as u32, pr - 1, |k| int(2 * k * pr - 2 * k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{padic_valuation, parse_rational};

    #[test]
    fn corollary_sum_at_three() {
        let s = sun_sum(3, int);
        assert_eq!(s, parse_rational("2673/524288").unwrap());
        assert_eq!(padic_valuation(&s, 3).unwrap().finite(), Some(5));
    }

    #[test]
    fn ratio_recurrence_matches_direct_products() {
        let a = rat(2, 7);
        let direct: Rational = (0..6i64)
            .map(|k| {
                let mut x = Rational::one();
                for j in 0..k {
                    x *= (&a + int(j)) / int(j + 1);
                }
                x.pow(3i32) * int(k + 1)
            })
            .sum();
        assert_eq!(hypergeometric_sum(&a, 3, 5, |k| int(k + 1)), direct);
    }

    #[test]
    fn general_forms_reduce_at_r_one() {
        for p in [5i64, 7] {
            let a = rat(1, p + 1);
            let direct = hypergeometric_sum(&a, (2 * p + 2) as u32, p - 1, |k| int(2 * p * k + 2 * k + 1));
            assert_eq!(seventh_power_sum(p, 1), direct);
            let b = rat(-1, p - 1);
            let direct = hypergeometric_sum(&b, (2 * p - 2) as u32, p - 1, |k| int(2 * p * k - 2 * k - 1));
            assert_eq!(fifth_power_sum(p, 1), direct);
        }
    }

    #[test]
    fn terminates_on_nonpositive_integer_parameter() {
        // (-2)_k vanishes from k = 3 on
        let s = hypergeometric_sum(&int(-2), 1, 10, |_| int(1));
        assert_eq!(s, int(1) - int(2) + int(1));
    }
}
