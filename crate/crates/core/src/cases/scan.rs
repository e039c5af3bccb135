//! Grid scans over the `[2dk+r]` families beyond the proven parameter ranges.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::builtin::{new_d_sum, new_odd_sum};
use super::{CaseKind, Detail, Params, Report, Verdict};
use crate::arith::gcd_i64;
use crate::congruence::{check_sum_congruence, ModulusSpec};
use crate::error::{Error, Result};
use crate::qpoly::precompute_cyclotomics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanFamily {
    /// `[2dk+r] (q^r;q^d)_k^d / (q^d;q^d)_k^d q^{d(d-r-2)k/2}`, any `d`.
    NewD,
    /// `[2dk+r]_{q²} (q^{2r};q^{2d})_k^d / (q^{2d};q^{2d})_k^d q^{d(d-r-2)k}`, any `d`.
    NewOdd,
}

impl FromStr for ScanFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "new-d" => Ok(Self::NewD),
            "new-odd" => Ok(Self::NewOdd),
            _ => Err(Error::Parse(format!("unknown scan family `{s}` (expected new-d or new-odd)"))),
        }
    }
}

impl fmt::Display for ScanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NewD => "new-d",
            Self::NewOdd => "new-odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub family: ScanFamily,
    pub d: Vec<i64>,
    pub r: Vec<i64>,
    pub n: Vec<i64>,
    /// Probe `Φ_n^power`.
    pub power: u32,
}

impl ScanGrid {
    /// The `n ≤ n_max` admissible for at least one `(d, r)`.
    pub fn admissible_up_to(family: ScanFamily, d: Vec<i64>, r: Vec<i64>, n_max: i64, power: u32) -> Self {
        let mut n: Vec<i64> = (2..=n_max)
            .filter(|&n| d.iter().any(|&dd| r.iter().any(|&rr| admissible(family, dd, rr, n).is_ok())))
            .collect();
        n.dedup();
        Self { family, d, r, n, power }
    }

    fn points(&self) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for &d in &self.d {
            for &r in &self.r {
                for &n in &self.n {
                    out.push((d, r, n));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub params: Params,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_factor: Option<(u64, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub millis: u64,
}

impl ScanPoint {
    /// The point in the shape of a case report; scans probe beyond proven ranges, so
    /// they are marked as conjectural.
    pub fn to_report(&self, family: ScanFamily, power: u32) -> Report {
        Report {
            case: family.to_string(),
            params: self.params.clone(),
            kind: CaseKind::QCongruence,
            verdict: self.verdict,
            detail: Detail {
                failing_factor: self.failing_factor,
                modulus: (self.verdict != Verdict::Inadmissible).then(|| format!("Φ_{}^{power}", self.params["n"])),
                reason: self.reason.clone(),
                conjecture: true,
                ..Detail::default()
            },
            millis: self.millis,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: ScanFamily,
    pub power: u32,
    pub points: Vec<ScanPoint>,
    /// Parameters of the failing points, in grid order.
    pub failures: Vec<Params>,
}

impl ScanReport {
    pub fn reports(&self) -> Vec<Report> {
        self.points.iter().map(|p| p.to_report(self.family, self.power)).collect()
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.points.iter().filter(|p| p.verdict == v).count()
    }
}

fn admissible(family: ScanFamily, d: i64, r: i64, n: i64) -> std::result::Result<(), String> {
    if d < 2 {
        return Err("d must be at least 2".into());
    }
    if gcd_i64(d, r) != 1 {
        return Err("gcd(d, r) must be 1".into());
    }
    if n <= 1 || (n + r).rem_euclid(d) != 0 {
        return Err("n must exceed 1 with n ≡ -r (mod d)".into());
    }
    if n < r.max(d - r) {
        return Err("n must be at least max(r, d - r)".into());
    }
    if family == ScanFamily::NewD && (d * (d - r - 2)) % 2 != 0 {
        return Err("d(d - r - 2)/2 must be an integer".into());
    }
    Ok(())
}

fn probe(family: ScanFamily, d: i64, r: i64, n: i64, power: u32) -> Result<ScanPoint> {
    let mut point = ScanPoint {
        params: super::params([("d", d), ("r", r), ("n", n)]),
        verdict: Verdict::Inadmissible,
        failing_factor: None,
        reason: None,
        millis: 0,
    };
    let start = std::time::Instant::now();
    if let Err(reason) = admissible(family, d, r, n) {
        point.reason = Some(reason);
        return Ok(point);
    }
    let spec = match family {
        ScanFamily::NewD => new_d_sum(d, r, n),
        ScanFamily::NewOdd => new_odd_sum(d, r, n),
    };
    let v = check_sum_congruence(&spec, &crate::qpoly::LaurentPoly::zero(), &ModulusSpec::new().cyclotomic(n as u64, power))?;
    point.verdict = if v.holds {
        Verdict::Holds
    } else if v.undefined() {
        Verdict::Undefined
    } else {
        Verdict::Fails
    };
    point.failing_factor = v.failing_factor;
    point.millis = start.elapsed().as_millis() as u64;
    Ok(point)
}

/// Checks every grid point at the probed power; failures are also listed up front.
pub fn scan(grid: &ScanGrid) -> Result<ScanReport> {
    if grid.power == 0 {
        return Err(Error::InvalidSpec("scan power must be at least 1".into()));
    }
    let pts = grid.points();
    precompute_cyclotomics(pts.iter().filter(|p| p.2 > 0).map(|p| p.2 as u64))?;
    let points = pts
        .par_iter()
        .map(|&(d, r, n)| probe(grid.family, d, r, n, grid.power))
        .collect::<Result<Vec<_>>>()?;
    let failures = points.iter().filter(|p| p.verdict == Verdict::Fails).map(|p| p.params.clone()).collect();
    Ok(ScanReport { family: grid.family, power: grid.power, points, failures })
}
