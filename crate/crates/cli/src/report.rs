//! Run reports: assembly, JSON files and the text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qcong::cases::{Report, Summary, Verdict};
use serde::{Deserialize, Serialize};

/// Resolved settings of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selector: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub ranges: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report_dir: Option<String>,
    pub workers: usize,
    pub oracle: bool,
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases_file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunInfo {
    pub command: String,
    pub config: RunConfig,
    pub version: String,
}

/// Wall times; everything outside this block is reproducible.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_millis: u64,
    /// Per result, in result order.
    pub results_millis: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub run: RunInfo,
    pub results: Vec<Report>,
    pub summary: Summary,
    /// Set while a run is still in progress, so an interrupted run leaves a marked file.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub partial: bool,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(config: RunConfig) -> Self {
        Self {
            run: RunInfo { command: config.command.clone(), config, version: env!("CARGO_PKG_VERSION").to_string() },
            results: Vec::new(),
            summary: Summary::default(),
            partial: false,
            timing: Timing::default(),
        }
    }

    /// Appends results; their wall times move to the timing block.
    pub fn extend(&mut self, reports: impl IntoIterator<Item = Report>) {
        for r in reports {
            self.timing.results_millis.push(r.millis);
            self.results.push(r.untimed());
        }
        self.summary = Summary::of(&self.results);
    }

    pub fn theorem_failures(&self) -> usize {
        self.results.iter().filter(|r| r.theorem_failure()).count()
    }

    pub fn all_inadmissible(&self) -> bool {
        self.results.iter().all(|r| r.verdict == Verdict::Inadmissible)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `<dir>/<name>.json`, written through a temporary file and a rename.
pub fn write_report(dir: &Path, name: &str, report: &RunReport) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.json"));
    let tmp = dir.join(format!(".{name}.json.tmp"));
    fs::write(&tmp, report.to_json() + "\n")?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// File stem for a run: the command and its selector, made filename-safe.
pub fn report_name(command: &str, selector: Option<&str>) -> String {
    let raw = match selector {
        Some(s) => format!("{command}-{s}"),
        None => command.to_string(),
    };
    raw.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

pub fn format_params(r: &Report) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn describe(r: &Report) -> String {
    let d = &r.detail;
    let mut parts = Vec::new();
    if let Some((n, e)) = d.failing_factor {
        parts.push(format!("fails at Φ_{n}^{e}"));
    }
    if let Some(m) = &d.modulus {
        parts.push(format!("mod {m}"));
    }
    if let Some(v) = &d.valuation {
        parts.push(format!("valuation {v}"));
    }
    if let Some(o) = &d.oracle {
        parts.push(format!("oracle {o}"));
    }
    if let Some(reason) = &d.reason {
        parts.push(reason.clone());
    }
    if d.conjecture {
        parts.push("[conjecture]".into());
    }
    parts.join("; ")
}

/// One line per result, wall times from `millis` when given.
pub fn table(results: &[Report], millis: Option<&[u64]>) -> String {
    let width = results.iter().map(|r| format_params(r).len()).max().unwrap_or(0).max(6);
    let mut out = String::new();
    for (i, r) in results.iter().enumerate() {
        let ms = millis.and_then(|m| m.get(i)).map(|m| format!("{m:>6} ms")).unwrap_or_default();
        let _ = writeln!(out, "{:<14} {:<width$} {:<12} {ms}  {}", r.case, format_params(r), r.verdict.to_string(), describe(r));
    }
    out
}

pub fn summary_line(s: &Summary) -> String {
    let mut line = format!(
        "checked {}: {} holds, {} fails, {} undefined; {} inadmissible",
        s.checked, s.holds, s.fails, s.undefined, s.inadmissible
    );
    if s.conjecture_failures > 0 {
        let _ = write!(line, "; {} conjecture failures (flagged, not fatal)", s.conjecture_failures);
    }
    line
}
