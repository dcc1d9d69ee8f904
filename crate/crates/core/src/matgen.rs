//! Deterministic generation of the data matrix and its shifted field.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{hash_words, to_open_unit};
use crate::rv_dist::TailModel;

/// Dimension growth `p = floor(ell * n^beta)`, with a constant slowly
/// varying factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRule {
    pub beta: f64,
    pub ell: f64,
}

impl GrowthRule {
    pub fn new(beta: f64, ell: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::invalid("beta", format!("{beta} must be >= 0")));
        }
        if !(ell.is_finite() && ell > 0.0) {
            return Err(Error::invalid("ell", format!("{ell} must be positive")));
        }
        Ok(Self { beta, ell })
    }

    pub fn dimension_p(&self, n: usize) -> usize {
        dimension_p(self, n)
    }
}

/// `floor(ell * n^beta)` clamped below at 1.
pub fn dimension_p(growth: &GrowthRule, n: usize) -> usize {
    let raw = growth.ell * (n as f64).powf(growth.beta);
    // absorb representation error such as 0.2 * 1000 landing a hair below 200
    let p = (raw * (1.0 + 4.0 * f64::EPSILON)).floor();
    if p < 1.0 {
        1
    } else {
        p as usize
    }
}

/// The matrix ensemble: sample size, growth rule, entry law, master seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub n: usize,
    pub growth: GrowthRule,
    pub dist: TailModel,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(n: usize, growth: GrowthRule, dist: TailModel, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("n", format!("{n} must be >= 2")));
        }
        Ok(Self {
            n,
            growth,
            dist,
            seed,
        })
    }

    pub fn p(&self) -> usize {
        dimension_p(&self.growth, self.n)
    }

    /// `a_{np}`.
    pub fn a_np(&self) -> f64 {
        self.dist
            .norming_constant((self.n as u64) * (self.p() as u64))
            .expect("n * p >= 2")
    }

    /// `a_{np}^2`, the eigenvalue scale.
    pub fn a_np_sq(&self) -> f64 {
        self.a_np().powi(2)
    }
}

/// Entries `Z_{it}` over rows `1 - row_pad ..= p + row_pad` and columns
/// `1 - col_pad ..= n + col_pad` (one-based, signed).
#[derive(Debug, Clone, PartialEq)]
pub struct DataField {
    p: usize,
    n: usize,
    row_pad: usize,
    col_pad: usize,
    // row-major over the padded index box
    entries: Vec<f64>,
}

impl DataField {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_pad(&self) -> usize {
        self.row_pad
    }

    pub fn col_pad(&self) -> usize {
        self.col_pad
    }

    fn width(&self) -> usize {
        self.n + 2 * self.col_pad
    }

    /// Entry at one-based signed indices; `None` outside the padded box.
    pub fn get(&self, i: i64, t: i64) -> Option<f64> {
        let r = i + self.row_pad as i64 - 1;
        let c = t + self.col_pad as i64 - 1;
        if r < 0 || c < 0 {
            return None;
        }
        let (r, c) = (r as usize, c as usize);
        if r >= self.p + 2 * self.row_pad || c >= self.width() {
            return None;
        }
        Some(self.entries[r * self.width() + c])
    }

    /// The base matrix `Z = Z(0, 0)`.
    pub fn base(&self) -> DMatrix<f64> {
        shifted_view(self, 0, 0).expect("zero shift always fits")
    }

    /// Builds a field directly from a closure over one-based signed indices.
    pub fn from_fn(
        p: usize,
        n: usize,
        row_pad: usize,
        col_pad: usize,
        mut f: impl FnMut(i64, i64) -> f64,
    ) -> Result<Self> {
        let rows = p
            .checked_add(row_pad.checked_mul(2).ok_or(Error::SizeOverflow { rows: p, cols: n })?)
            .ok_or(Error::SizeOverflow { rows: p, cols: n })?;
        let cols = n
            .checked_add(col_pad.checked_mul(2).ok_or(Error::SizeOverflow { rows: p, cols: n })?)
            .ok_or(Error::SizeOverflow { rows: p, cols: n })?;
        let len = rows
            .checked_mul(cols)
            .filter(|&l| l <= isize::MAX as usize / std::mem::size_of::<f64>())
            .ok_or(Error::SizeOverflow { rows, cols })?;
        let mut entries = Vec::with_capacity(len);
        for r in 0..rows {
            let i = r as i64 - row_pad as i64 + 1;
            for c in 0..cols {
                let t = c as i64 - col_pad as i64 + 1;
                entries.push(f(i, t));
            }
        }
        Ok(Self {
            p,
            n,
            row_pad,
            col_pad,
            entries,
        })
    }
}

/// Uniform variate addressing entry `(i, t)` of replication `replication`.
#[inline]
pub fn entry_uniform(seed: u64, replication: u64, i: i64, t: i64) -> f64 {
    to_open_unit(hash_words(&[seed, replication, i as u64, t as u64]))
}

/// Generates the padded field of iid entries for one replication.
///
/// Entry `(i, t)` is `dist.quantile(u)` with `u` a hash of
/// `(seed, replication, i, t)`, so any two fields of the same replication
/// agree wherever their index boxes overlap.
pub fn generate(
    config: &EnsembleConfig,
    replication: u64,
    row_pad: usize,
    col_pad: usize,
) -> Result<DataField> {
    let dist = &config.dist;
    let seed = config.seed;
    DataField::from_fn(config.p(), config.n, row_pad, col_pad, |i, t| {
        dist.quantile(entry_uniform(seed, replication, i, t))
    })
}

/// The unpadded `p x n` matrix of one replication.
pub fn generate_matrix(config: &EnsembleConfig, replication: u64) -> DMatrix<f64> {
    let (p, n) = (config.p(), config.n);
    let dist = &config.dist;
    DMatrix::from_fn(p, n, |r, c| {
        dist.quantile(entry_uniform(config.seed, replication, r as i64 + 1, c as i64 + 1))
    })
}

/// `Z(s, k)`: the `p x n` matrix with `(i, t)` entry `Z_{i-s, t-k}`.
pub fn shifted_view(field: &DataField, s: i64, k: i64) -> Result<DMatrix<f64>> {
    if s.unsigned_abs() as usize > field.row_pad || k.unsigned_abs() as usize > field.col_pad {
        return Err(Error::ShiftExceedsPadding {
            s,
            k,
            row_pad: field.row_pad,
            col_pad: field.col_pad,
        });
    }
    Ok(DMatrix::from_fn(field.p, field.n, |r, c| {
        let i = r as i64 + 1 - s;
        let t = c as i64 + 1 - k;
        field.get(i, t).expect("shift checked against padding")
    }))
}
