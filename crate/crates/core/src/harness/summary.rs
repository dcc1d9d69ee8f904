//! Summary statistics over replications: quantiles, ECDF, histograms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Empirical CDF of a finite sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    /// Fraction of the sample `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }
}

pub fn ecdf(values: &[f64]) -> Result<Ecdf> {
    if values.is_empty() {
        return Err(Error::Empty("ecdf"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Ecdf { sorted })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

/// Equal-width bins over `[min, max]`; every bin is half-open except the
/// last, which is closed.
pub fn histogram(values: &[f64], bins: usize) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::Empty("histogram"));
    }
    if bins == 0 {
        return Err(Error::invalid("bins", "need at least one bin"));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins)
        .map(|i| if i == bins { hi } else { lo + width * i as f64 })
        .collect();
    histogram_with_edges(values, &edges)
}

/// Counts over caller-supplied ascending edges; values outside are dropped.
pub fn histogram_with_edges(values: &[f64], edges: &[f64]) -> Result<Histogram> {
    if edges.len() < 2 {
        return Err(Error::invalid("edges", "need at least two edges"));
    }
    if edges.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Unsorted);
    }
    let bins = edges.len() - 1;
    let last = edges[bins];
    let mut counts = vec![0u64; bins];
    for &v in values {
        if v < edges[0] || v > last {
            continue;
        }
        let idx = if v == last {
            bins - 1
        } else {
            edges.partition_point(|&e| e <= v) - 1
        };
        counts[idx.min(bins - 1)] += 1;
    }
    Ok(Histogram {
        edges: edges.to_vec(),
        counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub q05: f64,
    pub q25: f64,
    pub q50: f64,
    pub q75: f64,
    pub q95: f64,
}

/// Linear-interpolation quantile of an ascending sample.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn median(values: &[f64]) -> Result<f64> {
    let e = ecdf(values)?;
    Ok(quantile_sorted(e.sorted(), 0.5))
}

/// Distance to a reference law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub reference: String,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub statistic: String,
    pub count: usize,
    pub mean: f64,
    pub std_err: f64,
    pub quantiles: Quantiles,
    pub ks: Vec<KsResult>,
    pub histogram: Histogram,
}

pub fn summarize(statistic: &str, values: &[f64], bins: usize) -> Result<SummaryStats> {
    let e = ecdf(values)?;
    let s = e.sorted();
    let m = s.len() as f64;
    let mean = s.iter().sum::<f64>() / m;
    let std_err = if s.len() > 1 {
        let var = s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
        (var / m).sqrt()
    } else {
        0.0
    };
    Ok(SummaryStats {
        statistic: statistic.to_string(),
        count: s.len(),
        mean,
        std_err,
        quantiles: Quantiles {
            q05: quantile_sorted(s, 0.05),
            q25: quantile_sorted(s, 0.25),
            q50: quantile_sorted(s, 0.50),
            q75: quantile_sorted(s, 0.75),
            q95: quantile_sorted(s, 0.95),
        },
        ks: Vec::new(),
        histogram: histogram(s, bins)?,
    })
}
