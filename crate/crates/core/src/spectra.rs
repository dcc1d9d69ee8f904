//! Dense symmetric eigendecomposition, Gram spectra and singular values.
//!
//! The symmetric solver is nalgebra's Householder tridiagonalization with
//! implicit QR; this module adds ordering, the sign convention, and the
//! Gram-side switch so that only the smaller of `ZZ'` and `Z'Z` is ever
//! decomposed.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Eigenvalues in descending order with optional aligned unit eigenvectors
/// (one per column). Each eigenvector has its largest-magnitude component
/// positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub values: Vec<f64>,
    pub vectors: Option<DMatrix<f64>>,
}

impl SpectralResult {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Eigenvector `j` (zero-based), if vectors were computed.
    pub fn vector(&self, j: usize) -> Option<DVector<f64>> {
        self.vectors
            .as_ref()
            .filter(|v| j < v.ncols())
            .map(|v| v.column(j).into_owned())
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn check_finite(m: &DMatrix<f64>, what: &'static str) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Flips `v` so its largest-magnitude entry (first one on ties) is positive.
pub(crate) fn orient(mut v: nalgebra::DVectorViewMut<'_, f64>) {
    let mut best = 0usize;
    let mut best_abs = -1.0;
    for (j, x) in v.iter().enumerate() {
        if x.abs() > best_abs {
            best_abs = x.abs();
            best = j;
        }
    }
    if !v.is_empty() && v[best] < 0.0 {
        v.neg_mut();
    }
}

/// Eigendecomposition of a matrix already known to be symmetric and finite.
fn eigh_unchecked(m: DMatrix<f64>, want_vectors: bool) -> Result<SpectralResult> {
    let dim = m.nrows();
    if dim == 0 {
        return Ok(SpectralResult {
            values: Vec::new(),
            vectors: want_vectors.then(|| DMatrix::zeros(0, 0)),
        });
    }
    if want_vectors {
        let eig = SymmetricEigen::try_new(m, f64::EPSILON, 100_000)
            .ok_or(Error::NonFinite("symmetric eigensolver did not converge"))?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values: Vec<f64> = order.iter().map(|&j| eig.eigenvalues[j]).collect();
        let mut vectors = DMatrix::zeros(dim, dim);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
            orient(vectors.column_mut(dst));
        }
        Ok(SpectralResult {
            values,
            vectors: Some(vectors),
        })
    } else {
        let ev = m.symmetric_eigenvalues();
        if ev.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("symmetric eigenvalues"));
        }
        let mut values: Vec<f64> = ev.iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(SpectralResult {
            values,
            vectors: None,
        })
    }
}

/// Full symmetric eigendecomposition with the descending/sign conventions.
pub fn eigh_sym(m: &DMatrix<f64>) -> Result<SpectralResult> {
    eigh_sym_opts(m, true)
}

/// As [`eigh_sym`], optionally skipping eigenvectors.
pub fn eigh_sym_opts(m: &DMatrix<f64>, want_vectors: bool) -> Result<SpectralResult> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "eigh needs a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    check_finite(m, "eigh input")?;
    let scale = max_abs(m);
    let mut asym = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..i {
            asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if asym > 1e-10 * scale {
        return Err(Error::NotSymmetric(asym / scale));
    }
    eigh_unchecked(m.clone(), want_vectors)
}

/// Orthonormalizes the columns of `u` in place (modified Gram-Schmidt, two
/// passes) and returns how many columns survived as independent.
fn gram_schmidt(u: &mut DMatrix<f64>, cols: usize) -> usize {
    let mut kept = 0;
    for j in 0..cols {
        let mut v = u.column(j).into_owned();
        let original = v.norm();
        for _ in 0..2 {
            for q in 0..kept {
                let qc = u.column(q);
                let proj = qc.dot(&v);
                v.axpy(-proj, &qc, 1.0);
            }
        }
        let norm = v.norm();
        if norm > 1e-10 * original.max(f64::MIN_POSITIVE) && norm > 0.0 {
            u.set_column(kept, &(v / norm));
            kept += 1;
        }
    }
    kept
}

/// Eigenvalues of `ZZ'` (length `p`), via the smaller Gram matrix.
///
/// When `n < p` the trailing `p - n` eigenvalues are zero. With
/// `want_vectors` the left eigenvectors are returned; on the `Z'Z` side they
/// are recovered as `Z v / sqrt(mu)`, re-orthonormalized, and completed to a
/// basis of `R^p`.
pub fn gram_eigs(z: &DMatrix<f64>, want_vectors: bool) -> Result<SpectralResult> {
    check_finite(z, "data matrix")?;
    let (p, n) = z.shape();
    if p <= n {
        let g = z * z.transpose();
        return eigh_unchecked(g, want_vectors);
    }
    let h = z.tr_mul(z);
    let small = eigh_unchecked(h, want_vectors)?;
    let mut values = small.values.clone();
    values.resize(p, 0.0);
    let vectors = if let Some(v) = small.vectors {
        let top = values[0].max(0.0);
        let mut u = DMatrix::zeros(p, p);
        let mut cols = 0;
        for j in 0..n {
            let mu = small.values[j];
            if mu > 1e-12 * top && mu > 0.0 {
                let col = z * v.column(j) / mu.sqrt();
                u.set_column(cols, &col);
                cols += 1;
            }
        }
        let mut kept = gram_schmidt(&mut u, cols);
        // complete with standard basis vectors
        for e in 0..p {
            if kept == p {
                break;
            }
            let before = kept;
            let mut w = DVector::zeros(p);
            w[e] = 1.0;
            for _ in 0..2 {
                for q in 0..before {
                    let qc = u.column(q);
                    let proj = qc.dot(&w);
                    w.axpy(-proj, &qc, 1.0);
                }
            }
            let norm = w.norm();
            if norm > 1e-8 {
                u.set_column(before, &(w / norm));
                kept += 1;
            }
        }
        for j in 0..p {
            orient(u.column_mut(j));
        }
        Some(u)
    } else {
        None
    };
    Ok(SpectralResult { values, vectors })
}

/// Singular values of `A` (`p x n`), descending, length `p`:
/// `sqrt(max(eig_i(AA'), 0))`.
pub fn singular_values(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    let eig = gram_eigs(a, false)?;
    Ok(eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect())
}

/// Largest singular value; zero for empty matrices.
pub fn spectral_norm(a: &DMatrix<f64>) -> Result<f64> {
    if a.is_empty() {
        return Ok(0.0);
    }
    // decompose whichever Gram side is smaller, rows or columns
    let sv = if a.nrows() <= a.ncols() {
        singular_values(a)?
    } else {
        singular_values(&a.transpose())?
    };
    Ok(sv.first().copied().unwrap_or(0.0))
}

/// Outcome of comparing the spectra of `A` and `A + B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylGap {
    /// `max_i |lambda_(i)(A + B) - lambda_(i)(A)|`
    pub max_shift: f64,
    /// `||B||_2`
    pub bound: f64,
}

impl WeylGap {
    /// Whether the shift respects the bound up to relative slack `1e-8`.
    pub fn holds(&self) -> bool {
        self.max_shift <= self.bound + 1e-8 * self.bound
    }
}

pub fn weyl_gap(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<WeylGap> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!(
            "{:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let base = eigh_sym_opts(a, false)?;
    let perturbed = eigh_sym_opts(&(a + b), false)?;
    let max_shift = base
        .values
        .iter()
        .zip(&perturbed.values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let b_eigs = eigh_sym_opts(b, false)?;
    let bound = b_eigs.values.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    Ok(WeylGap { max_shift, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let id = eigh_sym(&DMatrix::identity(2, 2)).unwrap();
        assert_eq!(id.values, vec![1.0, 1.0]);

        let d = eigh_sym(&DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 3.0])).unwrap();
        assert_eq!(d.values, vec![3.0, 1.0]);
        let v = d.vectors.unwrap();
        assert!((v[(1, 0)] - 1.0).abs() < 1e-14 && v[(0, 0)].abs() < 1e-14);
        assert!((v[(0, 1)] - 1.0).abs() < 1e-14);

        let m = eigh_sym(&DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0])).unwrap();
        assert!((m.values[0] - 3.0).abs() < 1e-14 && (m.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let ns = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(eigh_sym(&ns), Err(Error::NotSymmetric(_))));
        let nan = DMatrix::from_row_slice(1, 1, &[f64::NAN]);
        assert!(matches!(eigh_sym(&nan), Err(Error::NonFinite(_))));
        assert!(eigh_sym(&DMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn gram_examples() {
        let z = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let g = gram_eigs(&z, false).unwrap();
        assert!((g.values.iter().sum::<f64>() - 30.0).abs() < 1e-12);

        let row = DMatrix::from_row_slice(1, 3, &[1.0, -2.0, 0.5]);
        let g = gram_eigs(&row, true).unwrap();
        assert!((g.values[0] - 5.25).abs() < 1e-14);

        let tall = DMatrix::from_row_slice(3, 2, &[1.0, 0.3, -0.2, 2.0, 0.7, 0.1]);
        let g = gram_eigs(&tall, true).unwrap();
        assert_eq!(g.values.len(), 3);
        assert_eq!(g.values[2], 0.0);
        assert!(g.values[1] > 0.0);
        let v = g.vectors.unwrap();
        assert!((v.transpose() * &v - DMatrix::identity(3, 3)).amax() < 1e-10);
        let zzt = &tall * tall.transpose();
        for j in 0..2 {
            let resid = &zzt * v.column(j) - v.column(j) * g.values[j];
            assert!(resid.norm() < 1e-10);
        }
    }

    #[test]
    fn singular_value_examples() {
        let d = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, -4.0]);
        let sv = singular_values(&d).unwrap();
        assert!((sv[0] - 4.0).abs() < 1e-14 && (sv[1] - 3.0).abs() < 1e-14);
        assert_eq!(singular_values(&DMatrix::zeros(3, 2)).unwrap(), vec![0.0; 3]);
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, 0.0, 0.0]);
        assert_eq!(singular_values(&a).unwrap(), vec![2.0, 0.0]);
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&DMatrix::identity(4, 4)).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(spectral_norm(&DMatrix::zeros(3, 5)).unwrap(), 0.0);
        let u = DVector::from_vec(vec![1.0, -2.0, 2.0]);
        let v = DVector::from_vec(vec![3.0, 4.0]);
        let r1 = &u * v.transpose();
        assert!((spectral_norm(&r1).unwrap() - 15.0).abs() < 1e-12);
        let tall = DMatrix::from_row_slice(3, 1, &[1.0, 2.0, 2.0]);
        assert!((spectral_norm(&tall).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn weyl_examples() {
        let a = DMatrix::from_row_slice(2, 2, &[5.0, 0.0, 0.0, 1.0]);
        let zero = DMatrix::zeros(2, 2);
        let g = weyl_gap(&a, &zero).unwrap();
        assert_eq!((g.max_shift, g.bound), (0.0, 0.0));

        let b = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, -3.0]);
        let g = weyl_gap(&zero, &b).unwrap();
        assert!((g.max_shift - g.bound).abs() < 1e-12);

        let eps = 0.1;
        let b = DMatrix::from_row_slice(2, 2, &[0.0, eps, eps, 0.0]);
        let g = weyl_gap(&a, &b).unwrap();
        // top eigenvalue of [[5, e], [e, 1]] is 3 + sqrt(4 + e^2)
        assert!((g.max_shift - ((4.0f64 + eps * eps).sqrt() - 2.0)).abs() < 1e-12);
        assert!(g.max_shift <= 0.1 && g.holds());

        assert!(weyl_gap(&a, &DMatrix::zeros(3, 3)).is_err());
    }
}
