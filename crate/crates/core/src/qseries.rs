//! q-integers, q-shifted factorials and declarative truncated sums.
//!
//! A [`TruncatedSumSpec`] describes
//!
//! ```text
//!   Σ_{k = k_from}^{k_to}  [u k + v]_{q^s} · Π (±q^a; q^d)_k^e · q^{α k² + β k}
//! ```
//!
//! Every sum is lowered to a [`SumPlan`]: per-index weights plus the binomial
//! factors `1 ∓ q^x` by which the numerator and denominator products grow at
//! each step. Any [`SumRing`] can then accumulate the sum over the common
//! denominator without a single polynomial division, which is how both the
//! exact Laurent route and the residue route of the congruence checker work.

use num_traits::Zero;

use crate::arith::{format_rational, int, Rational};
use crate::error::{Error, Result};
use crate::qpoly::division::div_one_minus_q_pow;
use crate::qpoly::{LaurentPoly, RationalFunction};

/// The q-integer `[m]_{q^s} = (q^{sm} - 1) / (q^s - 1)`, for any integer `m`.
pub fn q_integer(m: i64, s: i64) -> LaurentPoly {
    assert!(s >= 1, "q-integer base exponent must be positive");
    match m {
        0 => LaurentPoly::zero(),
        m if m > 0 => LaurentPoly::from_terms((0..m).map(|j| (s * j, int(1)))),
        m => LaurentPoly::from_terms((1..=-m).map(|j| (-s * j, int(-1)))),
    }
}

/// `(q^a; q^d)_k = Π_{0 ≤ j < k} (1 - q^{a + j d})`.
pub fn pochhammer(a: i64, d: i64, k: i64) -> LaurentPoly {
    signed_pochhammer(a, d, k, false)
}

/// `(±q^a; q^d)_k`; `negated` selects `(-q^a; q^d)_k = Π (1 + q^{a + j d})`.
pub fn signed_pochhammer(a: i64, d: i64, k: i64, negated: bool) -> LaurentPoly {
    assert!(k >= 0, "q-shifted factorial length must be nonnegative");
    let c = if negated { int(-1) } else { int(1) };
    let mut p = LaurentPoly::one();
    for j in 0..k {
        p.mul_binomial_assign(a + j * d, &c);
        if p.is_zero() {
            break;
        }
    }
    p
}

/// Gaussian binomial coefficient `[n choose k]_q` built from q-shifted factorials.
pub fn gaussian_binomial(n: i64, k: i64) -> LaurentPoly {
    assert!(0 <= k && k <= n);
    let num = pochhammer(n - k + 1, 1, k);
    let den = pochhammer(1, 1, k);
    crate::qpoly::exact_div(&num, &den)
        .expect("nonzero divisor")
        .expect("Gaussian binomials are polynomials")
}

/// `(q^a; q^d)_k^exponent`; negative exponents put the factor in the denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPochhammerFactor {
    pub a: i64,
    pub d: i64,
    pub exponent: i32,
    /// `(-q^a; q^d)_k` instead of `(q^a; q^d)_k`.
    pub negated: bool,
}

impl QPochhammerFactor {
    pub fn new(a: i64, d: i64, exponent: i32) -> Self {
        Self { a, d, exponent, negated: false }
    }

    pub fn negated(a: i64, d: i64, exponent: i32) -> Self {
        Self { a, d, exponent, negated: true }
    }

    fn step(&self, j: i64) -> Binomial {
        Binomial { exp: self.a + j * self.d, plus: self.negated }
    }
}

/// The bracket `[u k + v]_{q^s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketFactor {
    pub u: i64,
    pub v: i64,
    pub s: i64,
}

/// `q^{α k² + β k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPowerFactor {
    pub alpha: Rational,
    pub beta: Rational,
}

impl QPowerFactor {
    pub fn linear(beta: i64) -> Self {
        Self { alpha: Rational::zero(), beta: int(beta) }
    }

    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Self { alpha, beta }
    }

    pub fn exponent_at(&self, k: i64) -> Result<i64> {
        let k = int(k);
        let e = &self.alpha * &k * &k + &self.beta * &k;
        if !e.is_integer() {
            return Err(Error::NonIntegralExponent(format_rational(&e), k.to_integer().try_into().unwrap_or(0)));
        }
        e.to_integer()
            .try_into()
            .map_err(|_| Error::InvalidSpec("q-power exponent overflows".into()))
    }
}

/// Declarative truncated sum; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSumSpec {
    pub bracket: Option<BracketFactor>,
    pub pochhammers: Vec<QPochhammerFactor>,
    pub qpower: QPowerFactor,
    pub k_from: i64,
    pub k_to: i64,
}

impl TruncatedSumSpec {
    /// The common shape `Σ_{k=0}^{k_to} [u k + v]_{q^s} (q^a;q^d)_k^e / (q^d;q^d)_k^e q^{…}`.
    pub fn well_poised(bracket: BracketFactor, a: i64, d: i64, e: i32, qpower: QPowerFactor, k_to: i64) -> Self {
        Self {
            bracket: Some(bracket),
            pochhammers: vec![QPochhammerFactor::new(a, d, e), QPochhammerFactor::new(d, d, -e)],
            qpower,
            k_from: 0,
            k_to,
        }
    }

    /// Checks range, q-power integrality and nonvanishing denominators.
    pub fn validate(&self) -> Result<()> {
        if self.k_from > self.k_to {
            return Err(Error::InvalidSpec(format!(
                "empty range {}..={}",
                self.k_from, self.k_to
            )));
        }
        if self.k_from < 0 {
            return Err(Error::InvalidSpec("summation must start at k ≥ 0".into()));
        }
        if let Some(b) = &self.bracket {
            if b.s < 1 {
                return Err(Error::InvalidSpec("bracket base exponent must be ≥ 1".into()));
            }
        }
        for f in &self.pochhammers {
            if f.d < 1 {
                return Err(Error::InvalidSpec(format!("Pochhammer step d = {} < 1", f.d)));
            }
            if f.exponent == 0 {
                return Err(Error::InvalidSpec("Pochhammer exponent must be nonzero".into()));
            }
            if f.exponent < 0 && !f.negated {
                for j in 0..self.k_to {
                    if f.a + j * f.d == 0 {
                        return Err(Error::VanishingDenominator(format!(
                            "(q^{}; q^{})_k vanishes for k > {j}",
                            f.a, f.d
                        )));
                    }
                }
            }
        }
        for k in self.k_from..=self.k_to {
            self.qpower.exponent_at(k)?;
        }
        Ok(())
    }

    /// Exact `k`-th summand.
    pub fn term(&self, k: i64) -> Result<RationalFunction> {
        if k < self.k_from || k > self.k_to {
            return Err(Error::InvalidSpec(format!(
                "k = {k} outside {}..={}",
                self.k_from, self.k_to
            )));
        }
        let mut num = LaurentPoly::q_pow(self.qpower.exponent_at(k)?);
        if let Some(b) = &self.bracket {
            num = &num * &q_integer(b.u * k + b.v, b.s);
        }
        let mut den = LaurentPoly::one();
        for f in &self.pochhammers {
            let p = signed_pochhammer(f.a, f.d, k, f.negated).pow(f.exponent.unsigned_abs());
            if f.exponent > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        RationalFunction::new(num, den).map_err(|_| {
            Error::VanishingDenominator(format!("denominator of term k = {k} is zero"))
        })
    }

    /// The sum as `N / D`, `D` being the denominator product at `k_to`.
    pub fn sum_over_common_denominator(&self) -> Result<RationalFunction> {
        let plan = SumPlan::from_spec(self, BracketMode::Binomial)?;
        let ring = LaurentRing;
        let (n, d) = plan.accumulate(&ring);
        let n = match plan.bracket_base {
            Some(s) => div_one_minus_q_pow(&n, s).expect("bracket numerators carry 1 - q^s"),
            None => n,
        };
        RationalFunction::new(n, d)
    }

    /// Sum of the individually built terms; independent of [`SumPlan`].
    pub fn sum_termwise(&self) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero();
        for k in self.k_from..=self.k_to {
            acc = &acc + &self.term(k)?;
        }
        Ok(acc)
    }
}

/// One factor `1 - q^exp` (or `1 + q^exp` when `plus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub exp: i64,
    pub plus: bool,
}

impl Binomial {
    pub fn to_poly(self) -> LaurentPoly {
        if self.plus {
            LaurentPoly::one_plus_q_pow(self.exp)
        } else {
            LaurentPoly::one_minus_q_pow(self.exp)
        }
    }

    /// Multiplicity of Φ_m in this factor (`m ≥ 1`); zero factors report 0.
    pub fn cyclotomic_multiplicity(self, m: i64) -> u32 {
        if self.exp == 0 {
            return 0;
        }
        if self.plus {
            (self.exp % m != 0 && (2 * self.exp) % m == 0) as u32
        } else {
            (self.exp % m == 0) as u32
        }
    }
}

/// How a bracket enters the per-index weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketMode {
    /// Weight carries `1 - q^{s m}`; the accumulated numerator is `(1 - q^s)` times the sum's.
    Binomial,
    /// Weight carries the full polynomial `[m]_{q^s}`.
    Explicit,
}

#[derive(Debug, Clone)]
pub enum WeightFactor {
    None,
    Binomial(Binomial),
    Poly(LaurentPoly),
}

#[derive(Debug, Clone)]
pub struct Weight {
    pub negative: bool,
    pub q_exp: i64,
    pub factor: WeightFactor,
}

/// A sum `Σ_k w_k Π_{j<k} num_j / Π_{j<k} den_j` ready for accumulation.
#[derive(Debug, Clone)]
pub struct SumPlan {
    pub k_from: i64,
    pub k_to: i64,
    pub weights: Vec<Weight>,
    pub num_steps: Vec<Vec<(Binomial, u32)>>,
    pub den_steps: Vec<Vec<(Binomial, u32)>>,
    /// `Some(s)` when the accumulated numerator carries an extra factor `1 - q^s`.
    pub bracket_base: Option<i64>,
}

impl SumPlan {
    pub fn from_spec(spec: &TruncatedSumSpec, mode: BracketMode) -> Result<Self> {
        spec.validate()?;
        let mut weights = Vec::new();
        for k in spec.k_from..=spec.k_to {
            let factor = match (&spec.bracket, mode) {
                (None, _) => WeightFactor::None,
                (Some(b), BracketMode::Binomial) => WeightFactor::Binomial(Binomial {
                    exp: b.s * (b.u * k + b.v),
                    plus: false,
                }),
                (Some(b), BracketMode::Explicit) => WeightFactor::Poly(q_integer(b.u * k + b.v, b.s)),
            };
            weights.push(Weight { negative: false, q_exp: spec.qpower.exponent_at(k)?, factor });
        }
        let mut num_steps = Vec::new();
        let mut den_steps = Vec::new();
        for j in 0..spec.k_to {
            let mut num = Vec::new();
            let mut den = Vec::new();
            for f in &spec.pochhammers {
                let mult = f.exponent.unsigned_abs();
                if f.exponent > 0 {
                    num.push((f.step(j), mult));
                } else {
                    den.push((f.step(j), mult));
                }
            }
            num_steps.push(num);
            den_steps.push(den);
        }
        let bracket_base = match (&spec.bracket, mode) {
            (Some(b), BracketMode::Binomial) => Some(b.s),
            _ => None,
        };
        Ok(Self { k_from: spec.k_from, k_to: spec.k_to, weights, num_steps, den_steps, bracket_base })
    }

    /// Every binomial of the common denominator with its multiplicity.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (Binomial, u32)> + '_ {
        self.den_steps.iter().flatten().copied()
    }

    /// Multiplicity of Φ_m in the common denominator.
    pub fn denominator_multiplicity(&self, m: i64) -> u32 {
        self.denominator_factors()
            .map(|(b, e)| b.cyclotomic_multiplicity(m) * e)
            .sum()
    }

    /// Accumulates `(N, D)` by forward Horner: `T_{k+1} = T_k den_k + w_{k+1} P_{k+1}`.
    pub fn accumulate<R: SumRing>(&self, ring: &R) -> (R::Elem, R::Elem) {
        let mut prod = ring.one();
        let mut den = ring.one();
        let mut prod_zero = false;
        for j in 0..self.k_from as usize {
            for &(b, e) in &self.num_steps[j] {
                for _ in 0..e {
                    ring.mul_binomial(&mut prod, b);
                }
                prod_zero |= b.exp == 0 && !b.plus;
            }
            for &(b, e) in &self.den_steps[j] {
                for _ in 0..e {
                    ring.mul_binomial(&mut den, b);
                }
            }
        }
        let mut total = ring.zero();
        for (i, k) in (self.k_from..=self.k_to).enumerate() {
            if k > self.k_from {
                let j = (k - 1) as usize;
                for &(b, e) in &self.den_steps[j] {
                    for _ in 0..e {
                        ring.mul_binomial(&mut total, b);
                        ring.mul_binomial(&mut den, b);
                    }
                }
                if !prod_zero {
                    for &(b, e) in &self.num_steps[j] {
                        for _ in 0..e {
                            ring.mul_binomial(&mut prod, b);
                        }
                        prod_zero |= b.exp == 0 && !b.plus;
                    }
                }
            }
            if prod_zero {
                continue;
            }
            let w = &self.weights[i];
            let mut t = ring.mul_q_pow(&prod, w.q_exp);
            match &w.factor {
                WeightFactor::None => {}
                WeightFactor::Binomial(b) => ring.mul_binomial(&mut t, *b),
                WeightFactor::Poly(p) => t = ring.mul_poly(&t, p),
            }
            if w.negative {
                t = ring.neg(&t);
            }
            ring.add_assign(&mut total, &t);
        }
        (total, den)
    }
}

/// Arithmetic needed to accumulate a [`SumPlan`].
pub trait SumRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn mul_binomial(&self, x: &mut Self::Elem, b: Binomial);
    fn mul_q_pow(&self, x: &Self::Elem, exp: i64) -> Self::Elem;
    fn mul_poly(&self, x: &Self::Elem, p: &LaurentPoly) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn add_assign(&self, x: &mut Self::Elem, y: &Self::Elem);
}

/// Exact Laurent polynomial arithmetic.
pub struct LaurentRing;

impl SumRing for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn mul_binomial(&self, x: &mut LaurentPoly, b: Binomial) {
        let c = if b.plus { int(-1) } else { int(1) };
        x.mul_binomial_assign(b.exp, &c);
    }
    fn mul_q_pow(&self, x: &LaurentPoly, exp: i64) -> LaurentPoly {
        x.shift(exp)
    }
    fn mul_poly(&self, x: &LaurentPoly, p: &LaurentPoly) -> LaurentPoly {
        x * p
    }
    fn neg(&self, x: &LaurentPoly) -> LaurentPoly {
        -x
    }
    fn add_assign(&self, x: &mut LaurentPoly, y: &LaurentPoly) {
        *x += y;
    }
}

/// Tracks only `(min_exp, max_exp)` bounds; used for degree reporting.
pub struct DegreeRing;

impl SumRing for DegreeRing {
    type Elem = Option<(i64, i64)>;

    fn zero(&self) -> Self::Elem {
        None
    }
    fn one(&self) -> Self::Elem {
        Some((0, 0))
    }
    fn mul_binomial(&self, x: &mut Self::Elem, b: Binomial) {
        if let Some((lo, hi)) = x {
            *lo += b.exp.min(0);
            *hi += b.exp.max(0);
        }
    }
    fn mul_q_pow(&self, x: &Self::Elem, exp: i64) -> Self::Elem {
        x.map(|(lo, hi)| (lo + exp, hi + exp))
    }
    fn mul_poly(&self, x: &Self::Elem, p: &LaurentPoly) -> Self::Elem {
        match (x, p.min_exp(), p.max_exp()) {
            (Some((lo, hi)), Some(a), Some(b)) => Some((lo + a, hi + b)),
            _ => None,
        }
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        *x
    }
    fn add_assign(&self, x: &mut Self::Elem, y: &Self::Elem) {
        *x = match (*x, *y) {
            (None, y) => y,
            (x, None) => x,
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
        };
    }
}

/// A parameter `±q^exp` of a basic hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QParam {
    pub exp: i64,
    pub negative: bool,
}

impl QParam {
    pub fn q(exp: i64) -> Self {
        Self { exp, negative: false }
    }

    pub fn minus_q(exp: i64) -> Self {
        Self { exp, negative: true }
    }
}

/// Partial sum of the first `count` terms of
/// `_{r+1}φ_r[a_1..a_{r+1}; b_1..b_r; q^d, z]` with `z = ±q^{z_exp}`.
///
/// The `(q^d; q^d)_k` of the definition is supplied automatically.
pub fn hypergeometric_phi(
    numerator_params: &[QParam],
    denominator_params: &[QParam],
    base_step: i64,
    z_exp: i64,
    z_negative: bool,
    count: i64,
) -> Result<RationalFunction> {
    if base_step < 1 {
        return Err(Error::InvalidSpec("base step must be ≥ 1".into()));
    }
    if count < 1 {
        return Ok(RationalFunction::zero());
    }
    let k_to = count - 1;
    let mut den_params = vec![QParam::q(base_step)];
    den_params.extend_from_slice(denominator_params);
    for p in &den_params {
        if !p.negative {
            for j in 0..k_to {
                if p.exp + j * base_step == 0 {
                    return Err(Error::VanishingDenominator(format!(
                        "(q^{}; q^{})_k vanishes for k > {j}",
                        p.exp, base_step
                    )));
                }
            }
        }
    }
    let step = |params: &[QParam], j: i64| -> Vec<(Binomial, u32)> {
        params
            .iter()
            .map(|p| (Binomial { exp: p.exp + j * base_step, plus: p.negative }, 1))
            .collect()
    };
    let plan = SumPlan {
        k_from: 0,
        k_to,
        weights: (0..=k_to)
            .map(|k| Weight {
                negative: z_negative && k % 2 == 1,
                q_exp: z_exp * k,
                factor: WeightFactor::None,
            })
            .collect(),
        num_steps: (0..k_to).map(|j| step(numerator_params, j)).collect(),
        den_steps: (0..k_to).map(|j| step(&den_params, j)).collect(),
        bracket_base: None,
    };
    let (n, d) = plan.accumulate(&LaurentRing);
    RationalFunction::new(n, d)
}
