//! Named grids: `quick` reproduces the acceptance ranges, `full` extends them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{grid_points, Params, Registry, ScanFamily, ScanGrid};
use crate::transforms::{random_instances, IdentityId, IdentityInstance};
use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Self::Quick),
            "full" => Ok(Self::Full),
            _ => Err(Error::Parse(format!("unknown profile `{s}` (expected quick or full)"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Quick => "quick",
            Self::Full => "full",
        })
    }
}

/// Admissible points of one case.
#[derive(Debug, Clone)]
pub struct Batch {
    pub case: String,
    pub points: Vec<Params>,
}

fn range(name: &str, values: impl IntoIterator<Item = i64>) -> (String, Vec<i64>) {
    (name.to_string(), values.into_iter().collect())
}

fn primes(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

fn batch(reg: &Registry, id: &str, ranges: Vec<(String, Vec<i64>)>) -> Batch {
    let ranges: BTreeMap<String, Vec<i64>> = ranges.into_iter().collect();
    let case = reg.get(id).expect("profile names registered cases");
    let points = grid_points(&ranges).into_iter().filter(|p| case.admissible(p).is_ok()).collect();
    Batch { case: id.to_string(), points }
}

/// The batches of a profile, in a fixed order.
pub fn batches(reg: &Registry, profile: Profile) -> Vec<Batch> {
    let big = profile == Profile::Full;
    let n31 = if big { 45 } else { 31 };
    let odd = |hi: i64| (3..=hi).step_by(2).collect::<Vec<_>>();
    let upto = |hi: i64| 2..=hi;
    let mut out = Vec::new();
    for id in ["T1a", "T1b", "CF1", "CF2", "T1a-half", "T1b-half"] {
        out.push(batch(reg, id, vec![range("n", odd(n31))]));
    }
    let n49 = if big { 73 } else { 49 };
    for id in ["T2", "T3"] {
        out.push(batch(reg, id, vec![range("d", [4, 6, 8]), range("n", upto(n49))]));
    }
    let n29 = if big { 41 } else { 29 };
    for id in ["T4", "antisymmetry", "truncation", "ratio"] {
        out.push(batch(reg, id, vec![range("d", [4, 5, 6, 7]), range("n", upto(n29))]));
    }
    out.push(batch(
        reg,
        "T5",
        vec![range("d", [4, 6]), range("r", [1, 3, 5, -1]), range("n", upto(if big { 47 } else { 35 }))],
    ));
    out.push(batch(reg, "T6", vec![range("d", [5, 7]), range("r", [2, 4]), range("n", upto(if big { 45 } else { 33 }))]));
    out.push(batch(reg, "T7", vec![range("d", [3, 4, 5]), range("n", upto(n31))]));
    for id in ["ODD1", "ODD2"] {
        out.push(batch(reg, id, vec![range("d", [5, 7]), range("n", upto(n29))]));
    }
    let ps = primes(3, if big { 23 } else { 13 });
    for id in ["E2p2k", "SUN5", "C5", "GAO"] {
        out.push(batch(reg, id, vec![range("p", ps.clone())]));
    }
    out.push(batch(reg, "CONJ-A", vec![range("r", [1, 2]), range("p", primes(2, if big { 19 } else { 13 }))]));
    for id in ["CONJ-B", "CONJ-C"] {
        let mut b = batch(reg, id, vec![range("p", if big { vec![5, 7, 11] } else { vec![5, 7] }), range("r", [1])]);
        b.points.push(super::params([("p", 5), ("r", 2)]));
        out.push(b);
    }
    let ns = if big { 2..=7 } else { 2..=5 };
    out.push(batch(reg, "QCONJ-1", vec![range("n", ns.clone())]));
    out.push(batch(reg, "QCONJ-2", vec![range("p", if big { vec![2, 3, 5, 7] } else { vec![2, 3, 5] })]));
    out.push(batch(reg, "QCONJ-3", vec![range("n", ns)]));
    out.push(batch(reg, "QCONJ-4", vec![range("p", if big { vec![2, 3, 5, 7, 11] } else { vec![3, 5, 7] })]));
    out.push(batch(reg, "lemma-1", vec![range("d", [5, 6, 7]), range("r", -7..=7), range("a", 1..=4)]));
    for id in ["qbinomial", "negq", "negq-half"] {
        out.push(batch(reg, id, vec![range("n", odd(n31))]));
    }
    out
}

/// Grid scans run by a profile: the reported counterexample family and a proven control.
pub fn scan_grids(profile: Profile) -> Vec<ScanGrid> {
    let big = profile == Profile::Full;
    vec![
        ScanGrid::admissible_up_to(ScanFamily::NewD, vec![5], vec![3], if big { 37 } else { 27 }, 2),
        ScanGrid::admissible_up_to(ScanFamily::NewD, vec![4], vec![1], if big { 43 } else { 31 }, 2),
    ]
}

/// Identity instances run by a profile, series compared through `order`.
pub fn identity_instances(profile: Profile, order: i64) -> Vec<IdentityInstance> {
    let k = if profile == Profile::Full { 3 } else { 1 };
    let mut out = random_instances(IdentityId::SixPhiFiveTerminating, 10 * k, 1);
    out.extend(random_instances(IdentityId::Watson, 10 * k, 2));
    out.extend(random_instances(IdentityId::Andrews, 5 * k, 3));
    out.push(IdentityInstance::Rdid { r: 1, order });
    out.push(IdentityInstance::Rdid { r: -1, order });
    out.push(IdentityInstance::SunEuler { order });
    out.push(IdentityInstance::Rogers { a: 2, b: 1, c: 1, d: 1, base: 2, order });
    out.push(IdentityInstance::Rogers { a: 1, b: 1, c: 1, d: 1, base: 4, order });
    out
}
