//! Generalized sample autocovariance matrices `Z(0,0) Z(s,k)'`.
//!
//! These products are not symmetric once a shift is present, so they are
//! studied through singular values, computed as square roots of the
//! eigenvalues of `C C'`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{col_sums, row_sums, squared_order_stats};
use crate::error::{Error, Result};
use crate::matgen::{shifted_view, DataField};
use crate::spectra::singular_values;

/// Lag statistics of one field. The error fields are only defined for
/// `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagDiagnostics {
    pub s: i64,
    pub k: i64,
    /// `lambda_(1)(s, k) / a_np^2`
    pub top_norm: f64,
    pub err_row: Option<f64>,
    pub err_col: Option<f64>,
    pub err_order: Option<f64>,
}

/// The `p x p` product `Z(0,0) Z(s,k)'`.
pub fn autocov_matrix(field: &DataField, s: i64, k: i64) -> Result<DMatrix<f64>> {
    let shifted = shifted_view(field, s, k)?;
    let base = field.base();
    Ok(base * shifted.transpose())
}

/// Descending singular values of `Z(0,0) Z(s,k)'`.
pub fn lag_singular_values(field: &DataField, s: i64, k: i64) -> Result<Vec<f64>> {
    singular_values(&autocov_matrix(field, s, k)?)
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_unstable_by(|a, b| b.total_cmp(a));
    v
}

fn max_gap(sv: &[f64], reference: &[f64], len: usize) -> f64 {
    (0..len)
        .map(|i| (sv.get(i).copied().unwrap_or(0.0) - reference[i]).abs())
        .fold(0.0, f64::max)
}

pub fn lag_diagnostics(field: &DataField, s: i64, k: i64, a_np_sq: f64) -> Result<LagDiagnostics> {
    if !(a_np_sq > 0.0 && a_np_sq.is_finite()) {
        return Err(Error::invalid("a_np_sq", "must be positive and finite"));
    }
    let sv = lag_singular_values(field, s, k)?;
    if sv.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("lag singular values"));
    }
    let top_norm = sv.first().copied().unwrap_or(0.0) / a_np_sq;
    let mut out = LagDiagnostics {
        s,
        k,
        top_norm,
        err_row: None,
        err_col: None,
        err_order: None,
    };
    if k == 0 {
        let z = field.base();
        let (p, n) = z.shape();
        let shift = s.unsigned_abs() as usize;
        let rows = sorted_desc(row_sums(&z));
        let cols = sorted_desc(col_sums(&z));
        let order = squared_order_stats(&z, p)?;
        let p_range = p.saturating_sub(shift);
        let n_range = n.saturating_sub(shift);
        out.err_row = Some(max_gap(&sv, &rows, p_range) / a_np_sq);
        out.err_col = Some(max_gap(&sv, &cols, n_range) / a_np_sq);
        out.err_order = Some(max_gap(&sv, &order, p_range) / a_np_sq);
    }
    Ok(out)
}

/// Row `i` holds `(lambda_(i)(0,0), ..., lambda_(i)(l,0)) / a_np^2` for the
/// `k_top` largest singular values.
pub fn joint_lag_points(
    field: &DataField,
    max_lag: usize,
    a_np_sq: f64,
    k_top: usize,
) -> Result<DMatrix<f64>> {
    let p = field.p();
    if k_top == 0 || k_top > p {
        return Err(Error::OutOfRange {
            what: "k_top",
            index: k_top,
            limit: p,
        });
    }
    let mut out = DMatrix::zeros(k_top, max_lag + 1);
    for s in 0..=max_lag {
        let sv = lag_singular_values(field, s as i64, 0)?;
        for i in 0..k_top {
            out[(i, s)] = sv[i] / a_np_sq;
        }
    }
    Ok(out)
}

/// `max - min` across lags of row `row` of a [`joint_lag_points`] matrix.
pub fn lag_spread(points: &DMatrix<f64>, row: usize) -> f64 {
    let r = points.row(row);
    r.max() - r.min()
}
