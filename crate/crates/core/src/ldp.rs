//! Monte Carlo checks of large deviations for heavy-tailed sums and of the
//! rare events that keep a row of the data matrix dominated by one entry.
//!
//! Replication `r` of every estimator draws from `rng.split(r)`, so estimates
//! are reproducible and independent of how replications are scheduled.
//! Thresholds are expressed through the norming constants `a_n` and `a_np`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::rv_dist::TailModel;

/// Below this many exceedances a ratio estimate is flagged.
pub const MIN_EXCEEDANCES: u64 = 30;

/// Frequency estimate of an event with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventEstimate {
    pub estimate: f64,
    pub reps: u64,
    pub std_err: f64,
    pub threshold_used: f64,
}

impl EventEstimate {
    pub fn from_counts(hits: u64, reps: u64, threshold_used: f64) -> Self {
        let estimate = if reps == 0 { 0.0 } else { hits as f64 / reps as f64 };
        let std_err = if reps == 0 {
            0.0
        } else {
            (estimate * (1.0 - estimate) / reps as f64).sqrt()
        };
        Self {
            estimate,
            reps,
            std_err,
            threshold_used,
        }
    }

    /// Whether `value` lies within `z` standard errors of the estimate.
    pub fn within(&self, value: f64, z: f64) -> bool {
        (self.estimate - value).abs() <= z * self.std_err
    }
}

/// `P(S_n > x) / (n P(|Z| > x))`, whose limit is `p_plus`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NagaevEstimate {
    pub x: f64,
    pub exceedance: EventEstimate,
    pub hits: u64,
    pub ratio: f64,
    pub target: f64,
    pub low_confidence: bool,
}

/// `E[|S_n/x|^gamma ; |S_n| > x] / (n P(|Z| > x))`, whose limit is
/// `alpha / (alpha - gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KaramataEstimate {
    pub x: f64,
    pub ratio: f64,
    /// `P(|S_n| > x) / (n P(|Z| > x))` from the same draws
    pub event_ratio: f64,
    pub target: f64,
    pub hits: u64,
    pub low_confidence: bool,
}

fn check_reps(reps: u64) -> Result<()> {
    if reps == 0 {
        Err(Error::invalid("reps", "need at least one replication"))
    } else {
        Ok(())
    }
}

/// `reps` replications of `S_n - n E[Z]` (no centering when `E|Z| = inf`).
pub fn centered_sums(dist: &TailModel, n: usize, reps: u64, rng: &CounterRng) -> Vec<f64> {
    let shift = dist.mean().unwrap_or(0.0) * n as f64;
    (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut s = rng.split(r);
            let total: f64 = (0..n).map(|_| dist.sample(&mut s)).sum();
            total - shift
        })
        .collect()
}

fn nagaev_from_sums(dist: &TailModel, n: usize, x: f64, sums: &[f64]) -> NagaevEstimate {
    let hits = sums.iter().filter(|&&s| s > x).count() as u64;
    let exceedance = EventEstimate::from_counts(hits, sums.len() as u64, x);
    let ratio = exceedance.estimate / (n as f64 * dist.tail_prob(x));
    NagaevEstimate {
        x,
        exceedance,
        hits,
        ratio,
        target: dist.p_plus(),
        low_confidence: hits < MIN_EXCEEDANCES,
    }
}

pub fn nagaev_ratio(
    dist: &TailModel,
    n: usize,
    x: f64,
    reps: u64,
    rng: &CounterRng,
) -> Result<NagaevEstimate> {
    Ok(nagaev_ratio_grid(dist, n, &[x], reps, rng)?.remove(0))
}

/// Nagaev ratios for several thresholds from one set of sums.
pub fn nagaev_ratio_grid(
    dist: &TailModel,
    n: usize,
    xs: &[f64],
    reps: u64,
    rng: &CounterRng,
) -> Result<Vec<NagaevEstimate>> {
    check_reps(reps)?;
    if n == 0 {
        return Err(Error::invalid("n", "need at least one summand"));
    }
    if let Some(bad) = xs.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::invalid("x", format!("threshold {bad} must be positive")));
    }
    let sums = centered_sums(dist, n, reps, rng);
    Ok(xs.iter().map(|&x| nagaev_from_sums(dist, n, x, &sums)).collect())
}

/// Smallest threshold of the large-deviation regime for `alpha > 2`,
/// `sqrt((alpha - 2) n ln n)`; `None` for `alpha <= 2`, where the regime is
/// `x / a_n -> inf` instead.
pub fn nagaev_threshold_floor(alpha: f64, n: usize) -> Option<f64> {
    (alpha > 2.0).then(|| ((alpha - 2.0) * n as f64 * (n as f64).ln()).sqrt())
}

pub fn karamata_sum_ratio(
    dist: &TailModel,
    n: usize,
    gamma: f64,
    x_n: f64,
    reps: u64,
    rng: &CounterRng,
) -> Result<KaramataEstimate> {
    check_reps(reps)?;
    let alpha = dist.alpha();
    if !(gamma > 0.0 && gamma < alpha) {
        return Err(Error::invalid("gamma", format!("{gamma} not in (0, {alpha})")));
    }
    if !(x_n > 0.0) {
        return Err(Error::invalid("x_n", "threshold must be positive"));
    }
    let sums = centered_sums(dist, n, reps, rng);
    let mut hits = 0u64;
    let mut acc = 0.0;
    for s in &sums {
        let y = s.abs() / x_n;
        if y > 1.0 {
            hits += 1;
            acc += y.powf(gamma);
        }
    }
    let scale = reps as f64 * n as f64 * dist.tail_prob(x_n);
    Ok(KaramataEstimate {
        x: x_n,
        ratio: acc / scale,
        event_ratio: hits as f64 / scale,
        target: alpha / (alpha - gamma),
        hits,
        low_confidence: hits < MIN_EXCEEDANCES,
    })
}

/// Frequency of `{k-th largest of n draws of |Z| > a_n^(1 - epsilon)}`.
pub fn kth_order_event(
    dist: &TailModel,
    n: usize,
    epsilon: f64,
    k: usize,
    reps: u64,
    rng: &CounterRng,
) -> Result<EventEstimate> {
    check_reps(reps)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon", format!("{epsilon} not in (0, 1)")));
    }
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "order statistic rank",
            index: k,
            limit: n,
        });
    }
    let threshold = dist.norming_constant(n as u64)?.powf(1.0 - epsilon);
    let hits: u64 = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut s = rng.split(r);
            let above = (0..n).filter(|_| dist.sample_abs(&mut s) > threshold).count();
            u64::from(above >= k)
        })
        .sum();
    Ok(EventEstimate::from_counts(hits, reps, threshold))
}

/// Frequency of `{some row of a p x n field has two entries with |Z| > a_np^delta}`,
/// equivalently `Z^2 > a_np^(2 delta)`.
pub fn two_large_entries(
    dist: &TailModel,
    n: usize,
    p: usize,
    delta: f64,
    reps: u64,
    rng: &CounterRng,
) -> Result<EventEstimate> {
    check_reps(reps)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", format!("{delta} not in (0, 1)")));
    }
    let threshold = dist.norming_constant((n * p) as u64)?.powf(delta);
    let hits: u64 = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut s = rng.split(r);
            let mut found = false;
            for _ in 0..p {
                let mut count = 0;
                for _ in 0..n {
                    if dist.sample_abs(&mut s) > threshold {
                        count += 1;
                    }
                }
                found |= count >= 2;
            }
            u64::from(found)
        })
        .sum();
    Ok(EventEstimate::from_counts(hits, reps, threshold))
}

/// Frequency of `{some row i: S_n^(i) - M_n^(i) > a_np^(1 - epsilon)}` for
/// rows of `n` iid draws of `|Z|`. Pass `dist.squared()` to run the check
/// on squared entries.
pub fn sum_minus_max(
    dist: &TailModel,
    n: usize,
    p: usize,
    epsilon: f64,
    reps: u64,
    rng: &CounterRng,
) -> Result<EventEstimate> {
    check_reps(reps)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon", format!("{epsilon} not in (0, 1)")));
    }
    if n == 0 || p == 0 {
        return Err(Error::invalid("n, p", "dimensions must be positive"));
    }
    let threshold = dist.norming_constant((n * p) as u64)?.powf(1.0 - epsilon);
    let hits: u64 = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut s = rng.split(r);
            let mut found = false;
            for _ in 0..p {
                let mut total = 0.0;
                let mut max = 0.0f64;
                for _ in 0..n {
                    let x = dist.sample_abs(&mut s);
                    total += x;
                    max = max.max(x);
                }
                found |= total - max > threshold;
            }
            u64::from(found)
        })
        .sum();
    Ok(EventEstimate::from_counts(hits, reps, threshold))
}

/// Supremum of the `epsilon` values for which the single-big-jump bound is
/// proved, for entries of tail index `alpha < 2` and growth exponent `beta`.
/// `None` when `(alpha, beta)` lies outside the proved range.
pub fn admissible_epsilon(alpha: f64, beta: f64) -> Option<f64> {
    if !(alpha > 0.0 && alpha < 2.0) || !(beta > 0.0) {
        return None;
    }
    let share = beta / (1.0 + beta);
    if alpha < 1.0 {
        Some(share * (1.0 - alpha) / (2.0 - alpha))
    } else {
        if beta <= alpha - 1.0 {
            return None;
        }
        let first = 1.0 - alpha / (1.0 + beta);
        Some(first.min(share * (2.0 - alpha) / (4.0 - alpha)))
    }
}
