//! Frechet law, Gamma-point Poisson limits and order-statistic functionals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::rv_dist::TailModel;

/// A realized point measure on `(0, inf)`, stored as its points in
/// descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSample {
    pub points: Vec<f64>,
}

impl PointSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_strictly_descending(&self) -> bool {
        self.points.windows(2).all(|w| w[0] > w[1])
    }
}

/// Frechet distribution `Phi_a(x) = exp(-x^(-a))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrechetLaw {
    pub shape: f64,
}

impl FrechetLaw {
    pub fn new(shape: f64) -> Result<Self> {
        if shape.is_finite() && shape > 0.0 {
            Ok(Self { shape })
        } else {
            Err(Error::invalid("shape", format!("{shape} must be positive")))
        }
    }

    /// The limit law of `lambda_(1) / a_np^2` for tail index `alpha`.
    pub fn for_tail_index(alpha: f64) -> Result<Self> {
        Self::new(alpha / 2.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        frechet_cdf(self, x)
    }

    pub fn quantile(&self, q: f64) -> Result<f64> {
        frechet_quantile(self, q)
    }
}

pub fn frechet_cdf(law: &FrechetLaw, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-x.powf(-law.shape)).exp()
    }
}

pub fn frechet_quantile(law: &FrechetLaw, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::invalid("q", format!("{q} not in (0, 1)")));
    }
    Ok((-q.ln()).powf(-1.0 / law.shape))
}

/// The first `count` points `Gamma_i^(-2/alpha)` of the limit Poisson
/// process, where `Gamma_i` are partial sums of standard exponentials.
pub fn gamma_points(count: usize, alpha: f64, rng: &mut CounterRng) -> Result<PointSample> {
    if count == 0 {
        return Err(Error::invalid("count", "need at least one point"));
    }
    if !(alpha > 0.0 && alpha < 4.0) {
        return Err(Error::invalid("alpha", format!("{alpha} not in (0, 4)")));
    }
    let exponent = -2.0 / alpha;
    let mut gamma = 0.0;
    let points = (0..count)
        .map(|_| {
            gamma += rng.exponential();
            gamma.powf(exponent)
        })
        .collect();
    Ok(PointSample { points })
}

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of an
/// ascending sample and `cdf`.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::Empty("ks_statistic"));
    }
    if sample.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Unsorted);
    }
    let m = sample.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sample.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / m - f).max(f - i as f64 / m);
    }
    Ok(d)
}

/// Sorts a copy of `values` and returns its KS distance to `law`.
pub fn frechet_ks(values: &[f64], law: &FrechetLaw) -> Result<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    ks_statistic(&v, |x| law.cdf(x))
}

/// Centering subtracted from eigenvalues before scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenteringMode {
    /// no centering
    Zero,
    /// `n * E[Z^2]`
    SampleSize,
    /// `max(p, n) * E[Z^2]`
    MaxDim,
}

impl std::str::FromStr for CenteringMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "zero" => Ok(CenteringMode::Zero),
            "n" => Ok(CenteringMode::SampleSize),
            "maxnp" => Ok(CenteringMode::MaxDim),
            other => Err(Error::invalid(
                "centering",
                format!("`{other}` is not one of none, n, maxnp"),
            )),
        }
    }
}

impl std::fmt::Display for CenteringMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CenteringMode::Zero => "none",
            CenteringMode::SampleSize => "n",
            CenteringMode::MaxDim => "maxnp",
        })
    }
}

/// The numeric centering for `mode`; errors if it needs an infinite `E[Z^2]`.
pub fn centering_value(mode: CenteringMode, dist: &TailModel, n: usize, p: usize) -> Result<f64> {
    let second = || {
        dist.second_moment().finite().ok_or_else(|| {
            Error::invalid("centering", format!("E[Z^2] is infinite for {dist}"))
        })
    };
    Ok(match mode {
        CenteringMode::Zero => 0.0,
        CenteringMode::SampleSize => n as f64 * second()?,
        CenteringMode::MaxDim => n.max(p) as f64 * second()?,
    })
}

/// Zero centering when `alpha <= 2` or `max(n, p) / a_np^2 < 0.05`;
/// otherwise `None` and the caller has to pick a mode.
pub fn default_centering(
    dist: &TailModel,
    n: usize,
    p: usize,
    a_np_sq: f64,
) -> Option<CenteringMode> {
    if dist.alpha() <= 2.0 || (n.max(p) as f64) / a_np_sq < 0.05 {
        Some(CenteringMode::Zero)
    } else {
        None
    }
}

/// `((lambda_(1) - c), ..., (lambda_(k) - c)) / a_np^2` for descending `values`.
pub fn top_k(values: &[f64], a_np_sq: f64, k: usize, centering: f64) -> Result<Vec<f64>> {
    if k == 0 || k > values.len() {
        return Err(Error::OutOfRange {
            what: "top_k count",
            index: k,
            limit: values.len(),
        });
    }
    Ok(values[..k].iter().map(|l| (l - centering) / a_np_sq).collect())
}

/// `(lambda_(i) - lambda_(i+1)) / a_np^2` for `i = 1..=k`.
pub fn spacings(values: &[f64], a_np_sq: f64, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k + 1 > values.len() {
        return Err(Error::OutOfRange {
            what: "spacings count",
            index: k,
            limit: values.len().saturating_sub(1),
        });
    }
    Ok(values[..=k]
        .windows(2)
        .map(|w| (w[0] - w[1]).max(0.0) / a_np_sq)
        .collect())
}

/// `lambda_(1) / (lambda_1 + ... + lambda_p)`.
pub fn trace_ratio(values: &[f64]) -> Result<f64> {
    let trace: f64 = values.iter().sum();
    if !(trace > 0.0) {
        return Err(Error::invalid("eigenvalues", "trace must be positive"));
    }
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(top / trace)
}

/// One draw of the limit of the trace ratio, from a truncated Gamma series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitTraceRatio {
    pub ratio: f64,
    pub truncated_sum: f64,
    /// `int_m^inf x^(-2/alpha) dx`, the expected size of the dropped tail
    pub tail_estimate: f64,
}

/// `Gamma_1^(-2/alpha) / sum_{i<=terms} Gamma_i^(-2/alpha)`, valid for
/// `alpha < 2` where the series converges.
pub fn limit_trace_ratio(alpha: f64, terms: usize, rng: &mut CounterRng) -> Result<LimitTraceRatio> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::invalid("alpha", "trace ratio limit needs alpha in (0, 2)"));
    }
    let pts = gamma_points(terms, alpha, rng)?;
    let truncated_sum: f64 = pts.points.iter().sum();
    let e = 2.0 / alpha;
    let tail_estimate = (terms as f64).powf(1.0 - e) / (e - 1.0);
    Ok(LimitTraceRatio {
        ratio: pts.points[0] / truncated_sum,
        truncated_sum,
        tail_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frechet_values() {
        let law = FrechetLaw::new(0.8).unwrap();
        assert!((law.cdf(1.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(law.cdf(f64::INFINITY), 1.0);
        assert_eq!(law.cdf(0.0), 0.0);
        assert_eq!(law.cdf(-2.0), 0.0);
        for x in [0.5, 1.0, 7.0] {
            let back = law.quantile(law.cdf(x)).unwrap();
            assert!((back - x).abs() < 1e-12 * x);
        }
        assert!(law.quantile(0.0).is_err());
        assert!(law.quantile(1.0).is_err());
        assert!(FrechetLaw::new(0.0).is_err());
    }

    #[test]
    fn frechet_quantile_increasing() {
        let law = FrechetLaw::new(1.3).unwrap();
        let grid: Vec<f64> = (1..1000).map(|i| law.quantile(i as f64 / 1000.0).unwrap()).collect();
        assert!(grid.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn gamma_points_shape() {
        let mut rng = CounterRng::new(5);
        let pts = gamma_points(500, 1.6, &mut rng).unwrap();
        assert_eq!(pts.len(), 500);
        assert!(pts.is_strictly_descending());
        assert!(pts.points.iter().all(|&x| x > 0.0));

        // alpha = 2 gives reciprocal partial sums
        let mut a = CounterRng::new(9);
        let mut b = a;
        let pts = gamma_points(20, 2.0, &mut a).unwrap();
        let mut g = 0.0;
        for x in pts.points {
            g += b.exponential();
            assert!((x - 1.0 / g).abs() < 1e-15 * x.max(1.0));
        }
    }

    #[test]
    fn ks_examples() {
        let law = FrechetLaw::new(0.8).unwrap();
        let median = law.quantile(0.5).unwrap();
        assert!((ks_statistic(&[median], |x| law.cdf(x)).unwrap() - 0.5).abs() < 1e-12);
        let m = 40;
        let qs: Vec<f64> = (1..=m)
            .map(|i| law.quantile((i as f64 - 0.5) / m as f64).unwrap())
            .collect();
        let d = ks_statistic(&qs, |x| law.cdf(x)).unwrap();
        assert!((d - 0.5 / m as f64).abs() < 1e-12);
        assert_eq!(ks_statistic(&[2.0, 1.0], |x| x), Err(Error::Unsorted));
        assert!(ks_statistic(&[], |x| x).is_err());
    }

    #[test]
    fn top_k_and_spacings() {
        let vals = [9.0, 4.0, 4.0, 1.0];
        assert_eq!(top_k(&vals, 2.0, 1, 0.0).unwrap(), vec![4.5]);
        assert_eq!(top_k(&vals, 2.0, 1, 9.0).unwrap(), vec![0.0]);
        let t = top_k(&vals, 1.0, 4, 3.0).unwrap();
        assert!(t.windows(2).all(|w| w[0] >= w[1]));
        assert!(top_k(&vals, 1.0, 5, 0.0).is_err());
        assert!(top_k(&vals, 1.0, 0, 0.0).is_err());

        assert_eq!(spacings(&[3.0, 2.0, 2.0], 1.0, 2).unwrap(), vec![1.0, 0.0]);
        assert!(spacings(&[3.0, 2.0, 2.0], 1.0, 3).is_err());
    }

    #[test]
    fn trace_ratio_examples() {
        assert_eq!(trace_ratio(&[5.0, 0.0, 0.0]).unwrap(), 1.0);
        assert_eq!(trace_ratio(&[3.0, 1.0]).unwrap(), 0.75);
        assert!(trace_ratio(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn centering_choices() {
        let heavy = TailModel::paper(1.6).unwrap();
        let light = TailModel::paper(3.0).unwrap();
        assert_eq!(centering_value(CenteringMode::Zero, &heavy, 10, 5).unwrap(), 0.0);
        assert!(centering_value(CenteringMode::SampleSize, &heavy, 10, 5).is_err());
        let m2 = light.second_moment().finite().unwrap();
        assert_eq!(centering_value(CenteringMode::SampleSize, &light, 10, 20).unwrap(), 10.0 * m2);
        assert_eq!(centering_value(CenteringMode::MaxDim, &light, 10, 20).unwrap(), 20.0 * m2);
        assert_eq!(default_centering(&heavy, 1000, 200, 1.0), Some(CenteringMode::Zero));
        assert_eq!(default_centering(&light, 1000, 200, 1e3), None);
        assert_eq!(default_centering(&light, 1000, 200, 1e6), Some(CenteringMode::Zero));
        assert_eq!("maxnp".parse::<CenteringMode>().unwrap(), CenteringMode::MaxDim);
        assert!("both".parse::<CenteringMode>().is_err());
    }

    #[test]
    fn limit_trace_ratio_in_unit_interval() {
        let mut rng = CounterRng::new(1);
        let r = limit_trace_ratio(1.2, 10_000, &mut rng).unwrap();
        assert!(r.ratio > 0.0 && r.ratio <= 1.0);
        assert!(r.tail_estimate > 0.0 && r.tail_estimate < r.truncated_sum);
        assert!(limit_trace_ratio(2.5, 10, &mut rng).is_err());
    }
}
