//! Parameterized cases, verification drivers and grid scans.
//!
//! A case turns a parameter assignment into an [`Instance`]: a truncated
//! q-sum with a right-hand side and a cyclotomic modulus, a closed-form
//! identity, an exact rational sum with a prime-power modulus, or a direct
//! boolean check. Inadmissible points are reported with the violated
//! condition and never built.

mod builtin;
pub mod custom;
pub mod integer;
pub mod invariants;
pub mod profile;
mod range;
pub mod scan;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, padic_valuation, Rational};
use crate::congruence::{
    bracket_mode_for, check_congruence_factors, check_plan_factor, degree_bounds, plan_oracle, CongruenceVerdict,
    FactorCheck, FactorOutcome, ModulusSpec, OracleOutcome,
};
use crate::error::{Error, Result};
use crate::qpoly::{precompute_cyclotomics, LaurentPoly, RationalFunction};
use crate::qseries::{SumPlan, TruncatedSumSpec};

pub use custom::{load_custom_cases, parse_custom_cases, CustomCase};
pub use profile::{batches, identity_instances, scan_grids, Batch, Profile};
pub use range::parse_range;
pub use scan::{scan, ScanFamily, ScanGrid, ScanPoint, ScanReport};

pub type Params = BTreeMap<String, i64>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, i64); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    QCongruence,
    IntegerCongruence,
    ClosedForm,
    Invariant,
    /// A summation or transformation formula.
    Identity,
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::QCongruence => "q-congruence",
            Self::IntegerCongruence => "integer-congruence",
            Self::ClosedForm => "closed-form",
            Self::Invariant => "invariant",
            Self::Identity => "identity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Undefined,
    Inadmissible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Holds => "holds",
            Self::Fails => "fails",
            Self::Undefined => "undefined",
            Self::Inadmissible => "inadmissible",
        })
    }
}

/// What a case reduces to at one parameter point.
#[derive(Debug, Clone)]
pub enum Instance {
    Congruence { spec: TruncatedSumSpec, rhs: LaurentPoly, modulus: ModulusSpec },
    ClosedForm { spec: TruncatedSumSpec, closed: RationalFunction },
    Integer { sum: Rational, target: Rational, p: i64, power: i64 },
    Check { holds: bool, note: String },
}

type AdmitFn = dyn Fn(&Params) -> std::result::Result<(), String> + Send + Sync;
type BuildFn = dyn Fn(&Params) -> Result<Instance> + Send + Sync;

#[derive(Clone)]
pub struct CaseDef {
    pub id: String,
    pub kind: CaseKind,
    pub conjecture: bool,
    pub params: Vec<String>,
    /// Human-readable admissibility conditions.
    pub conditions: String,
    pub statement: String,
    admit: Arc<AdmitFn>,
    build: Arc<BuildFn>,
}

impl fmt::Debug for CaseDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaseDef").field("id", &self.id).field("kind", &self.kind).finish_non_exhaustive()
    }
}

impl CaseDef {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: &str,
        kind: CaseKind,
        conjecture: bool,
        params: &[&str],
        conditions: &str,
        statement: &str,
        admit: impl Fn(&Params) -> std::result::Result<(), String> + Send + Sync + 'static,
        build: impl Fn(&Params) -> Result<Instance> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.to_string(),
            kind,
            conjecture,
            params: params.iter().map(|s| s.to_string()).collect(),
            conditions: conditions.to_string(),
            statement: statement.to_string(),
            admit: Arc::new(admit),
            build: Arc::new(build),
        }
    }

    /// `Ok(())` or the violated condition. Total: missing parameters are reported, not raised.
    pub fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        for name in &self.params {
            if !p.contains_key(name) {
                return Err(format!("missing parameter {name}"));
            }
        }
        (self.admit)(p)
    }

    pub fn build(&self, p: &Params) -> Result<Instance> {
        self.check_names(p)?;
        self.admissible(p).map_err(Error::Inadmissible)?;
        (self.build)(p)
    }

    fn check_names(&self, p: &Params) -> Result<()> {
        for name in &self.params {
            if !p.contains_key(name) {
                return Err(Error::MissingParameter(name.clone()));
            }
        }
        if let Some(extra) = p.keys().find(|k| !self.params.contains(k)) {
            return Err(Error::InvalidSpec(format!("case {} has no parameter {extra}", self.id)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    pub numerator: (i64, i64),
    pub denominator: (i64, i64),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detail {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_factor: Option<(u64, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<String>,
    pub degrees: Option<Degrees>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue_degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub factors: Vec<FactorSummary>,
    /// `agrees` or `disagrees` when the numeric cross-check ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub conjecture: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub index: u64,
    pub exponent: u32,
    pub denominator_multiplicity: u32,
    pub outcome: String,
}

impl From<&FactorCheck> for FactorSummary {
    fn from(c: &FactorCheck) -> Self {
        let outcome = match c.outcome {
            FactorOutcome::Holds => "holds",
            FactorOutcome::Fails { .. } => "fails",
            FactorOutcome::Undefined => "undefined",
        };
        Self { index: c.index, exponent: c.exponent, denominator_multiplicity: c.denominator_multiplicity, outcome: outcome.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub params: Params,
    pub kind: CaseKind,
    pub verdict: Verdict,
    pub detail: Detail,
    pub millis: u64,
}

impl Report {
    /// The report with its wall time zeroed, for comparisons across runs.
    pub fn untimed(&self) -> Self {
        Self { millis: 0, ..self.clone() }
    }

    /// A conjecture point that did not hold.
    pub fn conjecture_failure(&self) -> bool {
        self.detail.conjecture && matches!(self.verdict, Verdict::Fails | Verdict::Undefined)
    }

    /// A theorem point that did not hold.
    pub fn theorem_failure(&self) -> bool {
        !self.detail.conjecture && matches!(self.verdict, Verdict::Fails | Verdict::Undefined)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checked: usize,
    pub holds: usize,
    pub fails: usize,
    pub undefined: usize,
    pub inadmissible: usize,
    pub conjecture_failures: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Self {
        let mut s = Self::default();
        for r in reports {
            match r.verdict {
                Verdict::Holds => s.holds += 1,
                Verdict::Fails => s.fails += 1,
                Verdict::Undefined => s.undefined += 1,
                Verdict::Inadmissible => s.inadmissible += 1,
            }
            if r.conjecture_failure() {
                s.conjecture_failures += 1;
            }
        }
        s.checked = s.holds + s.fails + s.undefined;
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Cross-check every cyclotomic factor with the numeric root-of-unity oracle.
    pub oracle: bool,
    pub precision: u32,
    /// Expand the sum over its common denominator and divide, instead of the residue route.
    pub expand: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { oracle: true, precision: 60, expand: false }
    }
}

/// Case lookup by id, in registration order.
#[derive(Debug, Clone)]
pub struct Registry {
    cases: Vec<CaseDef>,
}

impl Registry {
    pub fn builtin() -> Self {
        Self { cases: builtin::cases() }
    }

    pub fn empty() -> Self {
        Self { cases: Vec::new() }
    }

    /// Adds a case; an existing case with the same id is replaced.
    pub fn register(&mut self, case: CaseDef) {
        match self.cases.iter_mut().find(|c| c.id == case.id) {
            Some(slot) => *slot = case,
            None => self.cases.push(case),
        }
    }

    pub fn get(&self, id: &str) -> Result<&CaseDef> {
        self.cases.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))
    }

    pub fn cases(&self) -> &[CaseDef] {
        &self.cases
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.cases.iter().map(|c| c.id.as_str())
    }

    /// Verifies one point; inadmissible points yield an `inadmissible` report.
    pub fn verify_case(&self, id: &str, p: &Params, opts: &VerifyOptions) -> Result<Report> {
        let case = self.get(id)?;
        case.check_names(p)?;
        let start = Instant::now();
        let mut report = Report {
            case: case.id.clone(),
            params: p.clone(),
            kind: case.kind,
            verdict: Verdict::Inadmissible,
            detail: Detail { conjecture: case.conjecture, ..Detail::default() },
            millis: 0,
        };
        if let Err(reason) = case.admissible(p) {
            report.detail.reason = Some(reason);
            return Ok(report);
        }
        let instance = (case.build)(p)?;
        run_instance(&instance, opts, &mut report)?;
        report.millis = start.elapsed().as_millis() as u64;
        Ok(report)
    }

    /// Verifies every point of the cartesian product of `ranges`, in parallel, ordered by parameters.
    pub fn verify_family(&self, id: &str, ranges: &BTreeMap<String, Vec<i64>>, opts: &VerifyOptions) -> Result<Vec<Report>> {
        let case = self.get(id)?;
        let points = grid_points(ranges);
        for p in &points {
            case.check_names(p)?;
        }
        self.verify_points(id, points, opts)
    }

    /// Verifies the given points in parallel; the result follows the input order.
    pub fn verify_points(&self, id: &str, points: Vec<Params>, opts: &VerifyOptions) -> Result<Vec<Report>> {
        let case = self.get(id)?;
        if case.kind == CaseKind::QCongruence {
            warm_cyclotomic_cache(case, &points);
        }
        points.par_iter().map(|p| self.verify_case(id, p, opts)).collect()
    }
}

fn warm_cyclotomic_cache(case: &CaseDef, points: &[Params]) {
    let mut indices = std::collections::BTreeSet::new();
    for p in points {
        if case.admissible(p).is_ok() {
            if let Ok(Instance::Congruence { modulus, .. }) = (case.build)(p) {
                if let Ok(f) = modulus.expand() {
                    indices.extend(f.into_iter().map(|(n, _)| n));
                }
            }
        }
    }
    let _ = precompute_cyclotomics(indices);
}

/// Cartesian product of named value lists, in lexicographic parameter order.
pub fn grid_points(ranges: &BTreeMap<String, Vec<i64>>) -> Vec<Params> {
    let mut points = vec![Params::new()];
    for (name, values) in ranges {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.insert(name.clone(), v);
                    q
                })
            })
            .collect();
    }
    points
}

/// [`Registry::verify_case`] on the built-in registry with default options.
pub fn verify_case(id: &str, p: &Params) -> Result<Report> {
    Registry::builtin().verify_case(id, p, &VerifyOptions::default())
}

/// [`Registry::verify_family`] on the built-in registry with default options.
pub fn verify_family(id: &str, ranges: &BTreeMap<String, Vec<i64>>) -> Result<Vec<Report>> {
    Registry::builtin().verify_family(id, ranges, &VerifyOptions::default())
}

fn run_instance(instance: &Instance, opts: &VerifyOptions, report: &mut Report) -> Result<()> {
    match instance {
        Instance::Congruence { spec, rhs, modulus } => run_congruence(spec, rhs, modulus, opts, report),
        Instance::ClosedForm { spec, closed } => {
            spec.validate()?;
            let lhs = spec.sum_over_common_denominator()?;
            report.verdict = if &lhs == closed { Verdict::Holds } else { Verdict::Fails };
            report.detail.degrees = Some(Degrees {
                numerator: span(lhs.numerator()),
                denominator: span(lhs.denominator()),
            });
            Ok(())
        }
        Instance::Integer { sum, target, p, power } => {
            let v = padic_valuation(&(sum - target), *p)?;
            report.verdict = if v.at_least(*power) { Verdict::Holds } else { Verdict::Fails };
            report.detail.valuation = Some(v.to_string());
            report.detail.sum = Some(format_rational(sum));
            report.detail.modulus = Some(format!("{p}^{power}"));
            Ok(())
        }
        Instance::Check { holds, note } => {
            report.verdict = if *holds { Verdict::Holds } else { Verdict::Fails };
            if !note.is_empty() {
                report.detail.reason = Some(note.clone());
            }
            Ok(())
        }
    }
}

fn span(p: &LaurentPoly) -> (i64, i64) {
    (p.min_exp().unwrap_or(0), p.max_exp().unwrap_or(0))
}

fn run_congruence(
    spec: &TruncatedSumSpec,
    rhs: &LaurentPoly,
    modulus: &ModulusSpec,
    opts: &VerifyOptions,
    report: &mut Report,
) -> Result<()> {
    spec.validate()?;
    let factors = modulus.expand()?;
    if factors.is_empty() {
        return Err(Error::InvalidSpec("modulus is 1".into()));
    }
    let (num, den) = degree_bounds(spec)?;
    report.detail.degrees = Some(Degrees { numerator: num, denominator: den });
    report.detail.modulus = Some(modulus.to_string());
    let mut checks = Vec::with_capacity(factors.len());
    let mut oracle_agrees = true;
    if opts.expand {
        let lhs = spec.sum_over_common_denominator()?;
        checks = check_congruence_factors(&lhs, rhs, modulus)?;
    }
    for (i, &(n, e)) in factors.iter().enumerate() {
        let plan = SumPlan::from_spec(spec, bracket_mode_for(spec, n))?;
        if !opts.expand {
            checks.push(check_plan_factor(&plan, rhs, n, e)?);
        }
        if opts.oracle {
            let numeric = plan_oracle(&plan, rhs, n, e, opts.precision)?;
            let exact = match checks[i].outcome {
                FactorOutcome::Holds => OracleOutcome::Holds,
                FactorOutcome::Fails { .. } => OracleOutcome::Fails,
                FactorOutcome::Undefined => OracleOutcome::Undefined,
            };
            oracle_agrees &= numeric == exact;
        }
    }
    let v = CongruenceVerdict::fold(&checks);
    report.verdict = if v.holds {
        Verdict::Holds
    } else if v.undefined() {
        Verdict::Undefined
    } else {
        Verdict::Fails
    };
    report.detail.failing_factor = v.failing_factor;
    report.detail.residue_degree = v.residue_degree;
    report.detail.factors = checks.iter().map(FactorSummary::from).collect();
    if opts.oracle {
        report.detail.oracle = Some(if oracle_agrees { "agrees" } else { "disagrees" }.into());
    }
    Ok(())
}

#[cfg(test)]
mod tests;
