//! Reference computations that share no code with the library.
#![allow(dead_code)]

use nalgebra::DMatrix;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
pub fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect();
    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    d.sort_by(|x, y| y.partial_cmp(x).unwrap());
    d
}

/// Singular values via Jacobi on `A A'`, descending.
pub fn jacobi_singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    jacobi_eigenvalues(&(a * a.transpose()))
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect()
}

/// Composite Simpson rule with `intervals` (rounded up to even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let m = intervals + intervals % 2;
    let h = (b - a) / m as f64;
    let mut acc = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Density of the symmetric model with flat centre on `[-1/4, 1/4]`.
pub fn paper_density(alpha: f64, x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 0.25 {
        1.0
    } else {
        alpha / (4.0 * ax).powf(alpha + 1.0)
    }
}

/// `E[|Z|^r 1{|Z| <= x}]` for the flat-centre model by Simpson in log space
/// beyond the centre.
pub fn paper_truncated_moment(alpha: f64, r: f64, x: f64) -> f64 {
    // z = w^2 removes the root singularity of z^r at 0 for fractional r
    let centre = 2.0 * simpson(|w| 2.0 * w.powf(2.0 * r + 1.0), 0.0, 0.25_f64.min(x).sqrt(), 2000);
    if x <= 0.25 {
        return centre;
    }
    let outer = simpson(
        |u| {
            let z = u.exp();
            // tail branch explicitly: the density jumps at 1/4
            2.0 * z.powf(r) * alpha / (4.0 * z).powf(alpha + 1.0) * z
        },
        0.25_f64.ln(),
        x.ln(),
        20_000,
    );
    centre + outer
}

/// `E[Z^r 1{Z <= x}]` for a Pareto law on `[x_min, inf)` by Simpson in log space.
pub fn pareto_truncated_moment(alpha: f64, x_min: f64, r: f64, x: f64) -> f64 {
    simpson(
        |u| {
            let z = u.exp();
            z.powf(r) * alpha * x_min.powf(alpha) * z.powf(-alpha - 1.0) * z
        },
        x_min.ln(),
        x.ln(),
        20_000,
    )
}

/// `P(Bin(n, q) >= k)`.
pub fn binomial_upper_tail(n: u64, k: u64, q: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    // lower tail by the pmf recurrence, in logs to survive large n
    let ln_pmf0 = n as f64 * (1.0 - q).ln();
    let ratio = (q / (1.0 - q)).ln();
    let mut ln_pmf = ln_pmf0;
    let mut lower = ln_pmf.exp();
    for j in 0..k - 1 {
        ln_pmf += ((n - j) as f64).ln() - ((j + 1) as f64).ln() + ratio;
        lower += ln_pmf.exp();
    }
    1.0 - lower
}

/// Probability that some of `p` rows of `n` iid draws has at least two
/// exceedances of a level with exceedance probability `q`.
pub fn two_exceedances_in_some_row(n: u64, p: u64, q: f64) -> f64 {
    let none_or_one = (1.0 - q).powf(n as f64 - 1.0) * (1.0 + (n as f64 - 1.0) * q);
    1.0 - none_or_one.powf(p as f64)
}

/// Descending copy.
pub fn desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

/// Two-sided KS distance of a sample against `cdf`, by direct enumeration.
pub fn ks(mut sample: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / m).abs().max(((i + 1) as f64 / m - f).abs())
        })
        .fold(0.0, f64::max)
}

pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = s.len();
    if m % 2 == 1 {
        s[m / 2]
    } else {
        0.5 * (s[m / 2 - 1] + s[m / 2])
    }
}
