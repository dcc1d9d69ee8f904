//! Command line front end.
//!
//! `--config <file>` reads `key=value` lines that mirror the long flags of
//! the chosen subcommand; flags given on the command line take precedence.
//! Exit codes: 0 success, 2 invalid request, 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::output::write_outputs;
use super::{run, ExperimentKind, ExperimentSpec, LdpCheck, OutputFormat, RunOutput, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::extremes::CenteringMode;
use crate::matgen::{EnsembleConfig, GrowthRule};
use crate::rv_dist::TailModel;

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "heavycov",
    version,
    about = "Monte Carlo experiments on heavy-tailed sample covariance matrices",
    args_override_self = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// tail index of the default entry law
    #[arg(long)]
    alpha: Option<f64>,
    /// entry law, e.g. `paper:alpha=1.6` or `pareto:alpha=0.8,xmin=1`
    #[arg(long)]
    dist: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.2)]
    ell: f64,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 30)]
    bins: usize,
    /// file of `key=value` lines mirroring these flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Largest eigenvalue against its Frechet limit
    Frechet {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "none")]
        centering: String,
    },
    /// Row-sum, column-sum and order-statistic approximation errors
    Approx {
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvector localization on the largest row sums
    Eigvec {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// also write the components of the top eigenvector of replication 0
        #[arg(long)]
        components: Option<PathBuf>,
    },
    /// Top eigenvalues, spacings and trace ratio
    Pointproc {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value = "none")]
        centering: String,
        /// sample the Gamma-point limit instead of matrices
        #[arg(long)]
        limit: bool,
        /// Gamma points per limit draw
        #[arg(long, default_value_t = 10_000)]
        terms: usize,
    },
    /// Singular values of lagged autocovariance matrices
    Autocov {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        maxlag: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Large-deviation and single-big-jump event checks
    Ldp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        check: String,
        /// thresholds as multiples of a_n, comma separated
        #[arg(long, value_delimiter = ',', default_value = "5")]
        x_mult: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.4)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.95)]
        delta: f64,
        /// order-statistic rank for `kthorder`
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// run `bigjump` on squared entries
        #[arg(long)]
        squared: bool,
    },
}

fn build_spec(
    kind: ExperimentKind,
    common: &Common,
    default_dist: fn(f64) -> Result<TailModel>,
    default_alpha: f64,
) -> Result<ExperimentSpec> {
    let dist = match &common.dist {
        Some(s) => s.parse()?,
        None => default_dist(common.alpha.unwrap_or(default_alpha))?,
    };
    let growth = GrowthRule::new(common.beta, common.ell)?;
    let ensemble = EnsembleConfig::new(common.n, growth, dist, common.seed)?;
    let mut spec = ExperimentSpec::new(kind, ensemble, common.reps);
    spec.out = common.out.clone();
    spec.format = common.format.parse::<OutputFormat>()?;
    spec.threads = common.threads;
    spec.bins = common.bins;
    Ok(spec)
}

fn pareto_unit(alpha: f64) -> Result<TailModel> {
    TailModel::positive_pareto(alpha, 1.0)
}

fn write_components(spec: &ExperimentSpec, path: &PathBuf) -> Result<()> {
    let z = crate::matgen::generate_matrix(&spec.ensemble, 0);
    let eig = crate::spectra::gram_eigs(&z, true)?;
    let v = eig.vector(0).ok_or(Error::NonFinite("eigenvector"))?;
    let mut text = String::from("component,value\n");
    for (i, x) in v.iter().enumerate() {
        text.push_str(&format!("{},{}\n", i + 1, x));
    }
    fs::write(path, text)?;
    Ok(())
}

fn report(out: &RunOutput) {
    for s in &out.summary {
        let ks = s
            .ks
            .iter()
            .map(|k| format!("  ks[{}]={:.4}", k.reference, k.distance))
            .collect::<String>();
        eprintln!(
            "{:>16}  median={:.6}  q05={:.6}  q95={:.6}  mean={:.6}{}",
            s.statistic, s.quantiles.q50, s.quantiles.q05, s.quantiles.q95, s.mean, ks
        );
    }
}

fn execute(cli: Cli) -> Result<()> {
    let (spec, components) = match cli.command {
        Command::Frechet { common, centering } => {
            let mut spec = build_spec(ExperimentKind::Frechet, &common, TailModel::paper, 1.6)?;
            spec.centering = centering.parse::<CenteringMode>()?;
            (spec, None)
        }
        Command::Approx { common } => (
            build_spec(ExperimentKind::Approx, &common, TailModel::paper, 1.6)?,
            None,
        ),
        Command::Eigvec {
            common,
            k,
            components,
        } => {
            let mut spec = build_spec(ExperimentKind::Eigvec, &common, pareto_unit, 0.8)?;
            spec.k_top = k;
            (spec, components)
        }
        Command::Pointproc {
            common,
            k,
            centering,
            limit,
            terms,
        } => {
            let mut spec = build_spec(ExperimentKind::Pointproc, &common, TailModel::paper, 1.6)?;
            spec.k_top = k;
            spec.centering = centering.parse::<CenteringMode>()?;
            spec.limit = limit;
            spec.limit_terms = terms;
            (spec, None)
        }
        Command::Autocov { common, maxlag, k } => {
            let mut spec = build_spec(ExperimentKind::Autocov, &common, TailModel::paper, 1.6)?;
            spec.max_lag = maxlag;
            spec.k_top = k;
            (spec, None)
        }
        Command::Ldp {
            common,
            check,
            x_mult,
            gamma,
            epsilon,
            delta,
            rank,
            squared,
        } => {
            let mut spec = build_spec(ExperimentKind::Ldp, &common, TailModel::paper, 1.6)?;
            spec.ldp.check = check.parse::<LdpCheck>()?;
            spec.ldp.x_mult = x_mult;
            spec.ldp.gamma = gamma;
            spec.ldp.epsilon = epsilon;
            spec.ldp.delta = delta;
            spec.ldp.rank = rank;
            spec.ldp.squared = squared;
            (spec, None)
        }
    };
    let out = run(&spec)?;
    for path in write_outputs(&spec, &out)? {
        eprintln!("wrote {}", path.display());
    }
    if let Some(path) = components {
        write_components(&spec, &path)?;
        eprintln!("wrote {}", path.display());
    }
    report(&out);
    Ok(())
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::invalid("config", format!("line {}: expected key=value", lineno + 1))
        })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        pairs.push((key, v.trim().to_string()));
    }
    Ok(pairs)
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Inserts config-file flags right after the subcommand so that explicit
/// flags, which come later, override them.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::invalid("config", format!("{}: {e}", path.display())))?;
    let pairs = parse_config(&text)?;
    let sub = args
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|i| i + 1)
        .ok_or_else(|| Error::invalid("config", "no subcommand given"))?;
    let mut expanded: Vec<OsString> = args[..=sub].to_vec();
    for (k, v) in pairs {
        if v.eq_ignore_ascii_case("true") {
            expanded.push(format!("--{k}").into());
        } else if !v.eq_ignore_ascii_case("false") {
            expanded.push(format!("--{k}={v}").into());
        }
    }
    expanded.extend_from_slice(&args[sub + 1..]);
    Ok(expanded)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
