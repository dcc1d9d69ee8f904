//! Diagonal and order-statistic approximations of the spectrum of `ZZ'`,
//! and eigenvector localization.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{eigh_sym_opts, SpectralResult};

/// Normalized approximation errors for one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxErrors {
    /// `max_{i<=p} |lambda_(i) - D->_(i)| / a_np^2`
    pub err_row: f64,
    /// `max_{i<=n} |lambda_(i) - Dv_(i)| / a_np^2`, lambda zero-padded past `p`
    pub err_col: f64,
    /// `max_{i<=p} |lambda_(i) - Z^2_(i),np| / a_np^2`
    pub err_order: f64,
    /// hollow Gram norm over `a_np^2`, see [`offdiag_ratio`]
    pub offdiag_ratio: f64,
    /// `(lambda_(1) - D->_(1)) / a_np^2`, signed
    pub top_gap_row: f64,
    /// `(lambda_(1) - Z^2_(1),np) / a_np^2`, signed
    pub top_gap_order: f64,
    pub a_np_sq: f64,
}

/// How well `e_{L_k}` describes the `k`-th eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    /// one-based rank of the eigenvalue
    pub k: usize,
    /// `min_{sign} ||(+-) v_k - e_{L_k}||_2`
    pub distance: f64,
    /// `max_j v_k[j]^2`
    pub mass_top: f64,
    /// zero-based row index with the `k`-th largest row sum
    pub l_k: usize,
}

/// `D->_i = sum_t Z_it^2`.
pub fn row_sums(z: &DMatrix<f64>) -> Vec<f64> {
    (0..z.nrows())
        .map(|i| z.row(i).iter().map(|x| x * x).sum())
        .collect()
}

/// `Dv_t = sum_i Z_it^2`.
pub fn col_sums(z: &DMatrix<f64>) -> Vec<f64> {
    z.column_iter()
        .map(|c| c.iter().map(|x| x * x).sum())
        .collect()
}

/// The `m` largest squared entries, descending.
pub fn squared_order_stats(z: &DMatrix<f64>, m: usize) -> Result<Vec<f64>> {
    if m > z.len() {
        return Err(Error::OutOfRange {
            what: "order statistics count",
            index: m,
            limit: z.len(),
        });
    }
    let mut sq: Vec<f64> = z.iter().map(|x| x * x).collect();
    if m == 0 {
        return Ok(Vec::new());
    }
    if m < sq.len() {
        sq.select_nth_unstable_by(m - 1, |a, b| b.total_cmp(a));
        sq.truncate(m);
    }
    sq.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(sq)
}

/// Indices sorted by descending value; ties keep ascending index order.
pub fn rank_permutation(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_unstable_by(|a, b| b.total_cmp(a));
    v
}

/// `max_i |a_i - b_i|` over `i < len`, reading missing entries as zero.
fn max_abs_diff(a: &[f64], b: &[f64], len: usize) -> f64 {
    (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

fn hollow_norm(mut g: DMatrix<f64>) -> Result<f64> {
    if g.nrows() <= 1 {
        return Ok(0.0);
    }
    g.fill_diagonal(0.0);
    let eig = eigh_sym_opts(&g, false)?;
    Ok(eig.values[0].abs().max(eig.values[eig.len() - 1].abs()))
}

/// `||ZZ' - diag(ZZ')||_2 / a_np^2`, or the same for `Z'Z` when `p > n`.
pub fn offdiag_ratio(z: &DMatrix<f64>, a_np_sq: f64) -> Result<f64> {
    let g = if z.nrows() <= z.ncols() {
        z * z.transpose()
    } else {
        z.tr_mul(z)
    };
    Ok(hollow_norm(g)? / a_np_sq)
}

/// The three approximation errors of the spectrum in `spectrum`, which must
/// be `gram_eigs(z)`.
pub fn approx_errors(
    z: &DMatrix<f64>,
    a_np_sq: f64,
    spectrum: &SpectralResult,
) -> Result<ApproxErrors> {
    let (p, n) = z.shape();
    if spectrum.values.len() != p {
        return Err(Error::ShapeMismatch(format!(
            "spectrum has {} values for p = {p}",
            spectrum.values.len()
        )));
    }
    if spectrum.values.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("spectrum"));
    }
    if !(a_np_sq > 0.0 && a_np_sq.is_finite()) {
        return Err(Error::invalid("a_np_sq", "must be positive and finite"));
    }
    let lam = &spectrum.values;
    let rows = sorted_desc(row_sums(z));
    let cols = sorted_desc(col_sums(z));
    let order = squared_order_stats(z, p)?;
    let err_row = max_abs_diff(lam, &rows, p) / a_np_sq;
    let err_col = max_abs_diff(lam, &cols, n) / a_np_sq;
    let err_order = max_abs_diff(lam, &order, p) / a_np_sq;
    let top_gap_row = (lam[0] - rows[0]) / a_np_sq;
    let top_gap_order = (lam[0] - order[0]) / a_np_sq;
    Ok(ApproxErrors {
        err_row,
        err_col,
        err_order,
        offdiag_ratio: offdiag_ratio(z, a_np_sq)?,
        top_gap_row,
        top_gap_order,
        a_np_sq,
    })
}

/// Distance between the `k`-th (one-based) eigenvector and the basis vector
/// of the row with the `k`-th largest row sum.
pub fn localization(
    z: &DMatrix<f64>,
    spectrum: &SpectralResult,
    k: usize,
) -> Result<LocalizationReport> {
    let p = z.nrows();
    if k == 0 || k > p {
        return Err(Error::OutOfRange {
            what: "eigenvector rank",
            index: k,
            limit: p,
        });
    }
    let v = spectrum
        .vector(k - 1)
        .ok_or_else(|| Error::invalid("spectrum", "eigenvectors were not computed"))?;
    let l_k = rank_permutation(&row_sums(z))[k - 1];
    let mut e = DVector::zeros(p);
    e[l_k] = 1.0;
    let distance = (&v - &e).norm().min((&v + &e).norm());
    let mass_top = v.iter().map(|x| x * x).fold(0.0, f64::max);
    Ok(LocalizationReport {
        k,
        distance,
        mass_top,
        l_k,
    })
}

/// Bound `2 eps / (gap - eps)` on the distance between the eigenvector near
/// `lam` and the span of `v`, where `eps = ||H v - lam v||`.
pub fn perturbation_certificate(
    h: &DMatrix<f64>,
    v: &DVector<f64>,
    lam: f64,
    gap: f64,
) -> Result<f64> {
    if h.nrows() != v.len() || !h.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix with vector of length {}",
            h.nrows(),
            h.ncols(),
            v.len()
        )));
    }
    let residual = (h * v - v * lam).norm();
    if gap <= residual {
        return Err(Error::VacuousBound { gap, residual });
    }
    Ok(2.0 * residual / (gap - residual))
}
