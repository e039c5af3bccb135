//! Arithmetic in `Z[q] / ((q^m - 1)^L)`.
//!
//! An element is stored as `Σ_{i<L} A_i(q) t^i` with `t = q^m - 1` and
//! `deg A_i < m`. Since `q^m = 1 + t` is a unit, multiplying by any power of
//! `q`, negative ones included, is a rotation followed by a multiplication by
//! `(1 + t)^c`, which is a short binomial convolution in `t`.
//!
//! Every `Φ_m^L` divides `(q^m - 1)^L`, so residues modulo `Φ_m^L` are obtained
//! by converting back to a polynomial and reducing once at the end.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binomial, Rational};
use crate::qpoly::LaurentPoly;
use crate::qseries::{Binomial, SumRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    coeffs: Vec<BigInt>,
}

pub struct ResidueRing {
    m: usize,
    levels: usize,
}

impl ResidueRing {
    pub fn new(m: u64, levels: u32) -> Self {
        assert!(m >= 1 && levels >= 1);
        Self { m: m as usize, levels: levels as usize }
    }

    fn len(&self) -> usize {
        self.m * self.levels
    }

    pub fn to_poly(&self, x: &Residue) -> LaurentPoly {
        let t = LaurentPoly::q_pow(self.m as i64) - LaurentPoly::one();
        let mut acc = LaurentPoly::zero();
        for i in (0..self.levels).rev() {
            let layer = &x.coeffs[i * self.m..(i + 1) * self.m];
            let a = LaurentPoly::from_dense(0, layer.iter().map(|c| Rational::from_integer(c.clone())).collect());
            acc = &(&acc * &t) + &a;
        }
        acc
    }

    fn scaled_q_pow_add(&self, acc: &mut Residue, x: &Residue, exp: i64, c: &BigInt) {
        let y = self.mul_q_pow(x, exp);
        for (a, b) in acc.coeffs.iter_mut().zip(&y.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }
}

impl SumRing for ResidueRing {
    type Elem = Residue;

    fn zero(&self) -> Residue {
        Residue { coeffs: vec![BigInt::zero(); self.len()] }
    }

    fn one(&self) -> Residue {
        let mut r = self.zero();
        r.coeffs[0] = BigInt::from(1);
        r
    }

    fn mul_binomial(&self, x: &mut Residue, b: Binomial) {
        let y = self.mul_q_pow(x, b.exp);
        for (a, v) in x.coeffs.iter_mut().zip(y.coeffs) {
            if b.plus {
                *a += v;
            } else {
                *a -= v;
            }
        }
    }

    fn mul_q_pow(&self, x: &Residue, exp: i64) -> Residue {
        let m = self.m as i64;
        let (c, s) = (exp.div_euclid(m), exp.rem_euclid(m) as usize);
        let mut y = self.zero();
        for i in 0..self.levels {
            for r in 0..self.m {
                let v = &x.coeffs[i * self.m + r];
                if v.is_zero() {
                    continue;
                }
                let pos = r + s;
                if pos < self.m {
                    y.coeffs[i * self.m + pos] += v;
                } else {
                    // q^m = 1 + t
                    let pos = pos - self.m;
                    y.coeffs[i * self.m + pos] += v;
                    if i + 1 < self.levels {
                        y.coeffs[(i + 1) * self.m + pos] += v;
                    }
                }
            }
        }
        if c == 0 {
            return y;
        }
        let binoms: Vec<BigInt> = (0..self.levels as u32).map(|l| binomial(c, l)).collect();
        let mut z = self.zero();
        for i in 0..self.levels {
            for (l, bc) in binoms.iter().enumerate().take(self.levels - i) {
                if bc.is_zero() {
                    continue;
                }
                for r in 0..self.m {
                    let v = &y.coeffs[i * self.m + r];
                    if !v.is_zero() {
                        z.coeffs[(i + l) * self.m + r] += v * bc;
                    }
                }
            }
        }
        z
    }

    fn mul_poly(&self, x: &Residue, p: &LaurentPoly) -> Residue {
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            assert!(c.is_integer(), "residue ring weights must be integral");
            self.scaled_q_pow_add(&mut acc, x, e, &c.to_integer());
        }
        acc
    }

    fn neg(&self, x: &Residue) -> Residue {
        Residue { coeffs: x.coeffs.iter().map(|c| -c).collect() }
    }

    fn add_assign(&self, x: &mut Residue, y: &Residue) {
        for (a, b) in x.coeffs.iter_mut().zip(&y.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}
