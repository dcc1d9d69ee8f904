//! Replicated experiments.
//!
//! An [`ExperimentSpec`] names an experiment kind and an ensemble; [`run`]
//! evaluates one record per replication (each a pure function of the master
//! seed and the replication index) and summarizes every column. Records are
//! merged by replication index, so the result does not depend on the number
//! of worker threads.

pub mod cli;
pub mod output;
pub mod summary;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autocov::{joint_lag_points, lag_diagnostics, lag_spread};
use crate::diagnostics::{approx_errors, localization};
use crate::error::{Error, Result};
use crate::extremes::{
    centering_value, frechet_ks, gamma_points, spacings, top_k, trace_ratio,
    CenteringMode, FrechetLaw,
};
use crate::ldp;
use crate::matgen::{generate, generate_matrix, EnsembleConfig};
use crate::rng::CounterRng;
use crate::spectra::gram_eigs;

pub use summary::{ecdf, histogram, summarize, Ecdf, Histogram, KsResult, Quantiles, SummaryStats};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Frechet,
    Approx,
    Eigvec,
    Pointproc,
    Autocov,
    Ldp,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Frechet => "frechet",
            ExperimentKind::Approx => "approx",
            ExperimentKind::Eigvec => "eigvec",
            ExperimentKind::Pointproc => "pointproc",
            ExperimentKind::Autocov => "autocov",
            ExperimentKind::Ldp => "ldp",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LdpCheck {
    Nagaev,
    Karamata,
    Kthorder,
    Tworows,
    Bigjump,
}

impl FromStr for LdpCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "nagaev" => LdpCheck::Nagaev,
            "karamata" => LdpCheck::Karamata,
            "kthorder" => LdpCheck::Kthorder,
            "tworows" => LdpCheck::Tworows,
            "bigjump" => LdpCheck::Bigjump,
            other => {
                return Err(Error::invalid(
                    "check",
                    format!("`{other}` is not one of nagaev, karamata, kthorder, tworows, bigjump"),
                ))
            }
        })
    }
}

/// Parameters of the `ldp` experiment kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdpParams {
    pub check: LdpCheck,
    /// thresholds as multiples of `a_n` (nagaev, karamata)
    pub x_mult: Vec<f64>,
    pub gamma: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// one-based order-statistic rank (kthorder)
    pub rank: usize,
    /// run bigjump on squared entries
    pub squared: bool,
}

impl Default for LdpParams {
    fn default() -> Self {
        Self {
            check: LdpCheck::Nagaev,
            x_mult: vec![5.0],
            gamma: 1.0,
            epsilon: 0.4,
            delta: 0.95,
            rank: 1,
            squared: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::invalid("format", format!("`{other}` is not csv or json"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub ensemble: EnsembleConfig,
    pub replications: usize,
    pub k_top: usize,
    pub max_lag: usize,
    pub centering: CenteringMode,
    /// pointproc: emit samples of the Gamma-point limit instead of eigenvalues
    pub limit: bool,
    /// pointproc limit mode: number of Gamma points per draw
    pub limit_terms: usize,
    pub ldp: LdpParams,
    pub bins: usize,
    #[serde(skip)]
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, ensemble: EnsembleConfig, replications: usize) -> Self {
        Self {
            kind,
            ensemble,
            replications,
            k_top: 1,
            max_lag: 1,
            centering: CenteringMode::Zero,
            limit: false,
            limit_terms: 10_000,
            ldp: LdpParams::default(),
            bins: 30,
            threads: None,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    /// Checks every field and reports the first violation.
    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::invalid("replications", "must be >= 1"));
        }
        if self.k_top == 0 {
            return Err(Error::invalid("k_top", "must be >= 1"));
        }
        if self.bins == 0 {
            return Err(Error::invalid("bins", "must be >= 1"));
        }
        if self.ensemble.n < 2 {
            return Err(Error::invalid("n", "must be >= 2"));
        }
        let p = self.ensemble.p();
        match self.kind {
            ExperimentKind::Eigvec | ExperimentKind::Autocov if self.k_top > p => {
                return Err(Error::invalid("k", format!("{} exceeds p = {p}", self.k_top)))
            }
            ExperimentKind::Pointproc if !self.limit && self.k_top + 1 > p => {
                return Err(Error::invalid("k", format!("k + 1 = {} exceeds p = {p}", self.k_top + 1)))
            }
            ExperimentKind::Pointproc if self.limit && self.limit_terms < self.k_top + 1 => {
                return Err(Error::invalid("terms", "must exceed k"))
            }
            ExperimentKind::Frechet | ExperimentKind::Pointproc if !self.limit => {
                centering_value(self.centering, &self.ensemble.dist, self.ensemble.n, p)?;
            }
            ExperimentKind::Ldp => {
                let l = &self.ldp;
                if matches!(l.check, LdpCheck::Nagaev | LdpCheck::Karamata)
                    && (l.x_mult.is_empty() || l.x_mult.iter().any(|x| !(*x > 0.0)))
                {
                    return Err(Error::invalid("x_mult", "need positive threshold multiples"));
                }
                if l.check == LdpCheck::Karamata
                    && !(l.gamma > 0.0 && l.gamma < self.ensemble.dist.alpha())
                {
                    return Err(Error::invalid("gamma", "must lie in (0, alpha)"));
                }
                if !(l.epsilon > 0.0 && l.epsilon < 1.0) {
                    return Err(Error::invalid("epsilon", "must lie in (0, 1)"));
                }
                if !(l.delta > 0.0 && l.delta < 1.0) {
                    return Err(Error::invalid("delta", "must lie in (0, 1)"));
                }
                if l.rank == 0 || l.rank > self.ensemble.n {
                    return Err(Error::invalid("rank", "must lie in 1..=n"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Statistics of one replication, in the column order of [`RunOutput::columns`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationRecord {
    pub seed: u64,
    pub replication: u64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub columns: Vec<String>,
    pub records: Vec<ReplicationRecord>,
    pub summary: Vec<SummaryStats>,
}

impl RunOutput {
    /// All values of one column across records.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.records.iter().map(|r| r.values[j]).collect())
    }

    pub fn summary_of(&self, name: &str) -> Option<&SummaryStats> {
        self.summary.iter().find(|s| s.statistic == name)
    }
}

fn columns_for(spec: &ExperimentSpec) -> Vec<String> {
    let k = spec.k_top;
    match spec.kind {
        ExperimentKind::Frechet => vec!["top1".into()],
        ExperimentKind::Approx => [
            "err_row",
            "err_col",
            "err_order",
            "offdiag_ratio",
            "top_gap_row",
            "top_gap_order",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        ExperimentKind::Eigvec => (1..=k)
            .flat_map(|i| {
                [
                    format!("distance_{i}"),
                    format!("mass_top_{i}"),
                    format!("l_{i}"),
                ]
            })
            .collect(),
        ExperimentKind::Pointproc => {
            let mut c: Vec<String> = (1..=k).map(|i| format!("top_{i}")).collect();
            c.extend((1..=k).map(|i| format!("spacing_{i}")));
            if !spec.limit || spec.ensemble.dist.alpha() < 2.0 {
                c.push("trace_ratio".into());
            }
            c
        }
        ExperimentKind::Autocov => {
            let mut c = Vec::new();
            for s in 0..=spec.max_lag {
                c.push(format!("top_s{s}"));
                c.push(format!("err_row_s{s}"));
                c.push(format!("err_col_s{s}"));
                c.push(format!("err_order_s{s}"));
            }
            c.push("top_k1".into());
            c.extend((1..=k).map(|i| format!("spread_{i}")));
            c
        }
        ExperimentKind::Ldp => match spec.ldp.check {
            LdpCheck::Nagaev => vec![
                "x_mult", "x", "exceedance", "std_err", "ratio", "target", "hits",
            ],
            LdpCheck::Karamata => vec!["x_mult", "x", "ratio", "event_ratio", "target", "hits"],
            LdpCheck::Kthorder | LdpCheck::Tworows | LdpCheck::Bigjump => {
                vec!["estimate", "std_err", "threshold", "reps"]
            }
        }
        .into_iter()
        .map(String::from)
        .collect(),
    }
}

fn ensemble_record(spec: &ExperimentSpec, rep: u64, centering: f64) -> Result<Vec<f64>> {
    let cfg = &spec.ensemble;
    let a = cfg.a_np_sq();
    let k = spec.k_top;
    match spec.kind {
        ExperimentKind::Frechet => {
            let eig = gram_eigs(&generate_matrix(cfg, rep), false)?;
            Ok(top_k(&eig.values, a, 1, centering)?)
        }
        ExperimentKind::Approx => {
            let z = generate_matrix(cfg, rep);
            let eig = gram_eigs(&z, false)?;
            let e = approx_errors(&z, a, &eig)?;
            Ok(vec![
                e.err_row,
                e.err_col,
                e.err_order,
                e.offdiag_ratio,
                e.top_gap_row,
                e.top_gap_order,
            ])
        }
        ExperimentKind::Eigvec => {
            let z = generate_matrix(cfg, rep);
            let eig = gram_eigs(&z, true)?;
            let mut out = Vec::with_capacity(3 * k);
            for i in 1..=k {
                let r = localization(&z, &eig, i)?;
                out.extend([r.distance, r.mass_top, r.l_k as f64]);
            }
            Ok(out)
        }
        ExperimentKind::Pointproc if spec.limit => {
            let alpha = cfg.dist.alpha();
            let mut rng = CounterRng::new(cfg.seed).split(rep);
            let mut out: Vec<f64>;
            if alpha < 2.0 {
                let pts = gamma_points(spec.limit_terms, alpha, &mut rng)?;
                out = pts.points[..k].to_vec();
                out.extend(spacings(&pts.points, 1.0, k)?);
                out.push(pts.points[0] / pts.points.iter().sum::<f64>());
            } else {
                let pts = gamma_points(k + 1, alpha, &mut rng)?;
                out = pts.points[..k].to_vec();
                out.extend(spacings(&pts.points, 1.0, k)?);
            }
            Ok(out)
        }
        ExperimentKind::Pointproc => {
            let eig = gram_eigs(&generate_matrix(cfg, rep), false)?;
            let mut out = top_k(&eig.values, a, k, centering)?;
            out.extend(spacings(&eig.values, a, k)?);
            out.push(trace_ratio(&eig.values)?);
            Ok(out)
        }
        ExperimentKind::Autocov => {
            let field = generate(cfg, rep, spec.max_lag, 1)?;
            let mut out = Vec::new();
            for s in 0..=spec.max_lag {
                let d = lag_diagnostics(&field, s as i64, 0, a)?;
                out.extend([
                    d.top_norm,
                    d.err_row.unwrap_or(f64::NAN),
                    d.err_col.unwrap_or(f64::NAN),
                    d.err_order.unwrap_or(f64::NAN),
                ]);
            }
            out.push(lag_diagnostics(&field, 0, 1, a)?.top_norm);
            let joint = joint_lag_points(&field, spec.max_lag, a, k)?;
            out.extend((0..k).map(|i| lag_spread(&joint, i)));
            Ok(out)
        }
        ExperimentKind::Ldp => unreachable!("ldp handled separately"),
    }
}

fn ldp_records(spec: &ExperimentSpec) -> Result<Vec<Vec<f64>>> {
    let cfg = &spec.ensemble;
    let dist = &cfg.dist;
    let n = cfg.n;
    let p = cfg.p();
    let reps = spec.replications as u64;
    let rng = CounterRng::new(cfg.seed);
    let l = &spec.ldp;
    let a_n = dist.norming_constant(n as u64)?;
    Ok(match l.check {
        LdpCheck::Nagaev => {
            let xs: Vec<f64> = l.x_mult.iter().map(|m| m * a_n).collect();
            ldp::nagaev_ratio_grid(dist, n, &xs, reps, &rng)?
                .iter()
                .zip(&l.x_mult)
                .map(|(e, m)| {
                    vec![
                        *m,
                        e.x,
                        e.exceedance.estimate,
                        e.exceedance.std_err,
                        e.ratio,
                        e.target,
                        e.hits as f64,
                    ]
                })
                .collect()
        }
        LdpCheck::Karamata => l
            .x_mult
            .iter()
            .map(|m| {
                let e = ldp::karamata_sum_ratio(dist, n, l.gamma, m * a_n, reps, &rng)?;
                Ok(vec![*m, e.x, e.ratio, e.event_ratio, e.target, e.hits as f64])
            })
            .collect::<Result<_>>()?,
        LdpCheck::Kthorder | LdpCheck::Tworows | LdpCheck::Bigjump => {
            let e = match l.check {
                LdpCheck::Kthorder => ldp::kth_order_event(dist, n, l.epsilon, l.rank, reps, &rng)?,
                LdpCheck::Tworows => ldp::two_large_entries(dist, n, p, l.delta, reps, &rng)?,
                _ => {
                    let model = if l.squared { dist.squared() } else { dist.clone() };
                    ldp::sum_minus_max(&model, n, p, l.epsilon, reps, &rng)?
                }
            };
            vec![vec![e.estimate, e.std_err, e.threshold_used, e.reps as f64]]
        }
    })
}

fn run_inner(spec: &ExperimentSpec) -> Result<RunOutput> {
    let columns = columns_for(spec);
    let seed = spec.ensemble.seed;
    let rows: Vec<Vec<f64>> = if spec.kind == ExperimentKind::Ldp {
        ldp_records(spec)?
    } else {
        let cfg = &spec.ensemble;
        let centering = if spec.limit {
            0.0
        } else {
            centering_value(spec.centering, &cfg.dist, cfg.n, cfg.p())?
        };
        let results: Vec<Result<Vec<f64>>> = (0..spec.replications as u64)
            .into_par_iter()
            .map(|rep| ensemble_record(spec, rep, centering))
            .collect();
        let mut rows = Vec::with_capacity(results.len());
        for (rep, r) in results.into_iter().enumerate() {
            rows.push(r.map_err(|e| Error::Replication {
                replication: rep,
                source: Box::new(e),
            })?);
        }
        rows
    };
    let records: Vec<ReplicationRecord> = rows
        .into_iter()
        .enumerate()
        .map(|(i, values)| ReplicationRecord {
            seed,
            replication: i as u64,
            values,
        })
        .collect();
    for r in &records {
        debug_assert_eq!(r.values.len(), columns.len());
        if r.values.iter().any(|v| v.is_infinite()) {
            return Err(Error::Replication {
                replication: r.replication as usize,
                source: Box::new(Error::NonFinite("replication record")),
            });
        }
    }
    let mut summary = Vec::with_capacity(columns.len());
    for (j, name) in columns.iter().enumerate() {
        let vals: Vec<f64> = records
            .iter()
            .map(|r| r.values[j])
            .filter(|v| v.is_finite())
            .collect();
        if vals.is_empty() {
            continue;
        }
        let mut s = summarize(name, &vals, spec.bins)?;
        if let Some(law) = reference_law(spec, name) {
            s.ks.push(KsResult {
                reference: format!("frechet(shape={})", law.shape),
                distance: frechet_ks(&vals, &law)?,
            });
        }
        summary.push(s);
    }
    Ok(RunOutput {
        columns,
        records,
        summary,
    })
}

fn reference_law(spec: &ExperimentSpec, column: &str) -> Option<FrechetLaw> {
    let first = match spec.kind {
        ExperimentKind::Frechet => column == "top1",
        ExperimentKind::Pointproc => column == "top_1",
        _ => false,
    };
    first
        .then(|| FrechetLaw::for_tail_index(spec.ensemble.dist.alpha()).ok())
        .flatten()
}

/// Runs every replication and summarizes the records.
pub fn run(spec: &ExperimentSpec) -> Result<RunOutput> {
    spec.validate()?;
    match spec.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::invalid("threads", e.to_string()))?;
            pool.install(|| run_inner(spec))
        }
        None => run_inner(spec),
    }
}
