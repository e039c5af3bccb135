//! `qcong`: verification suites, scans and series checks from the command line.

mod commands;
mod params;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use qcong::cases::Profile;

#[derive(Debug, Parser)]
#[command(name = "qcong", version, about = "Exact verification of q-congruences, supercongruences and q-series identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the machine-readable report instead of the text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for JSON report files.
    #[arg(long, global = true, env = "QCONG_REPORT_DIR", value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Truncation order for series comparisons.
    #[arg(long, global = true, value_name = "T", default_value_t = qcong::transforms::DEFAULT_ORDER, allow_negative_numbers = true)]
    pub order: i64,
    /// Cross-check congruences with the numeric root-of-unity oracle.
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    pub oracle: Switch,
    /// Decimal digits for the numeric oracle.
    #[arg(long, global = true, value_name = "D", default_value_t = 60)]
    pub precision: u32,
    /// Expand each sum over its common denominator instead of reducing term by term.
    #[arg(long, global = true)]
    pub expand: bool,
    /// Register the cases of a JSON case file.
    #[arg(long, global = true, value_name = "FILE")]
    pub cases: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify one case over parameter ranges, e.g. `verify T1a --n 3..31:odd`.
    Verify {
        case: String,
        /// Case parameters as `--name RANGE`; RANGE is `a..b`, `a..b:odd`, `a..b:even` or a comma list.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "--PARAM RANGE")]
        params: Vec<String>,
    },
    /// Run every case of a profile, plus its scans and identity checks.
    VerifyAll {
        #[arg(long, default_value_t = Profile::Quick)]
        profile: Profile,
    },
    /// Probe a congruence family over a grid, beyond its proven range.
    Scan {
        /// `new-d` or `new-odd`.
        family: String,
        #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
        d: String,
        #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
        r: String,
        /// Explicit values of n.
        #[arg(long, value_name = "RANGE", conflicts_with = "n_max")]
        n: Option<String>,
        /// Every admissible n up to this bound.
        #[arg(long, value_name = "N")]
        n_max: Option<i64>,
        /// Probe modulo Φ_n^E.
        #[arg(long, value_name = "E", default_value_t = 2)]
        power: u32,
    },
    /// Check a summation or transformation identity exactly, or as series through --order.
    #[command(allow_negative_numbers = true)]
    SeriesCheck {
        id: String,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        a: Option<i64>,
        /// Comma list for andrews-m.
        #[arg(long, value_delimiter = ',')]
        b: Vec<i64>,
        /// Comma list for andrews-m.
        #[arg(long, value_delimiter = ',')]
        c: Vec<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        e: Option<i64>,
        /// Length of a terminating sum.
        #[arg(long)]
        n: Option<i64>,
        /// Work in base q^S.
        #[arg(long, value_name = "S")]
        base: Option<i64>,
        /// Check this many seeded random instances instead.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List registered cases, identities and scan families.
    ListCases,
}

/// Parses the command line; `verify` parameters may be interleaved with options.
fn parse(args: Vec<OsString>) -> Result<(Cli, Vec<(String, String)>), clap::Error> {
    let cli = Cli::try_parse_from(&args)?;
    let Command::Verify { case, params: trailing } = &cli.command else {
        return Ok((cli, Vec::new()));
    };
    if trailing.is_empty() {
        return Ok((cli, Vec::new()));
    }
    // a case file named among the parameters must be loaded before they can be told apart
    let cases_file = trailing
        .iter()
        .position(|t| t == "--cases")
        .and_then(|i| trailing.get(i + 1).cloned())
        .or_else(|| trailing.iter().find_map(|t| t.strip_prefix("--cases=").map(String::from)))
        .map(PathBuf::from)
        .or_else(|| cli.cases.clone());
    let names = commands::case_params(cases_file.as_deref(), case);
    let cmd = Cli::command();
    let takes_value = |name: &str| {
        cmd.get_arguments().any(|a| a.get_long() == Some(name) && a.get_action().takes_values())
    };
    let split = params::split_params(trailing, |n| names.iter().any(|p| p == n), takes_value)
        .map_err(|m| Cli::command().error(clap::error::ErrorKind::UnknownArgument, m))?;
    // options found among the parameters are moved ahead of the subcommand and parsed again
    let head = &args[..args.len() - trailing.len()];
    let mut again = vec![head[0].clone()];
    again.extend(split.rest.iter().map(OsString::from));
    again.extend(head[1..].iter().cloned());
    let cli = Cli::try_parse_from(again)?;
    Ok((cli, split.params))
}

fn main() -> ExitCode {
    let (cli, params) = match parse(std::env::args_os().collect()) {
        Ok(p) => p,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli, params) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
