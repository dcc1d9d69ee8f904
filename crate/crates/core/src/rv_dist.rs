//! Regularly varying entry distributions.
//!
//! Every model here has an exactly power-law tail beyond its support edge,
//! so `P(|Z| > x) = c * x^(-alpha)` there and the norming sequence `a_k`
//! with `P(|Z| > a_k) = 1/k` has a closed form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::CounterRng;

/// A regularly varying distribution with exact power tails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TailModel {
    /// Uniform density 1 on `[-1/4, 1/4]` glued to the symmetric power tails
    /// `alpha / (4|x|)^(alpha + 1)` outside.
    PaperDensity { alpha: f64 },
    /// `|Z|` is Pareto(`alpha`, `x_min`); the sign is `+` with probability `p_plus`.
    TwoSidedPareto { alpha: f64, p_plus: f64, x_min: f64 },
    /// Pareto(`alpha`, `x_min`) on `[x_min, inf)`.
    PositivePareto { alpha: f64, x_min: f64 },
    /// Law of `Z^2` for `Z` drawn from the inner model; tail index halves.
    Squared(Box<TailModel>),
}

/// Second moment of a model, which may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SecondMoment {
    Finite(f64),
    Infinite,
}

impl SecondMoment {
    pub fn finite(self) -> Option<f64> {
        match self {
            SecondMoment::Finite(v) => Some(v),
            SecondMoment::Infinite => None,
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha < 4.0 {
        Ok(())
    } else {
        Err(Error::invalid("alpha", format!("{alpha} not in (0, 4)")))
    }
}

fn check_x_min(x_min: f64) -> Result<()> {
    if x_min.is_finite() && x_min > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("x_min", format!("{x_min} must be positive")))
    }
}

/// `int_lo^hi t^(e - 1) dt` for `0 < lo <= hi`, `hi` possibly infinite.
fn power_integral(e: f64, lo: f64, hi: f64) -> f64 {
    if e == 0.0 {
        (hi / lo).ln()
    } else if hi.is_infinite() {
        // only called with e < 0 here
        -lo.powf(e) / e
    } else {
        (hi.powf(e) - lo.powf(e)) / e
    }
}

impl TailModel {
    pub fn paper(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(TailModel::PaperDensity { alpha })
    }

    pub fn two_sided_pareto(alpha: f64, p_plus: f64, x_min: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_x_min(x_min)?;
        if !(0.0..=1.0).contains(&p_plus) {
            return Err(Error::invalid("p_plus", format!("{p_plus} not in [0, 1]")));
        }
        Ok(TailModel::TwoSidedPareto {
            alpha,
            p_plus,
            x_min,
        })
    }

    pub fn positive_pareto(alpha: f64, x_min: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_x_min(x_min)?;
        Ok(TailModel::PositivePareto { alpha, x_min })
    }

    /// The model of `Z^2`.
    pub fn squared(&self) -> Self {
        TailModel::Squared(Box::new(self.clone()))
    }

    pub fn alpha(&self) -> f64 {
        match self {
            TailModel::PaperDensity { alpha }
            | TailModel::TwoSidedPareto { alpha, .. }
            | TailModel::PositivePareto { alpha, .. } => *alpha,
            TailModel::Squared(inner) => inner.alpha() / 2.0,
        }
    }

    /// Weight of the right tail, `lim P(Z > x) / P(|Z| > x)`.
    pub fn p_plus(&self) -> f64 {
        match self {
            TailModel::PaperDensity { .. } => 0.5,
            TailModel::TwoSidedPareto { p_plus, .. } => *p_plus,
            TailModel::PositivePareto { .. } | TailModel::Squared(_) => 1.0,
        }
    }

    pub fn p_minus(&self) -> f64 {
        1.0 - self.p_plus()
    }

    /// Point beyond which the tail is an exact power law.
    pub fn support_edge(&self) -> f64 {
        match self {
            TailModel::PaperDensity { .. } => 0.25,
            TailModel::TwoSidedPareto { x_min, .. } | TailModel::PositivePareto { x_min, .. } => {
                *x_min
            }
            TailModel::Squared(inner) => inner.support_edge().powi(2),
        }
    }

    /// `P(|Z| > x)`.
    pub fn tail_prob(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x < 0.0 {
            return 1.0;
        }
        match self {
            TailModel::PaperDensity { alpha } => {
                if x < 0.25 {
                    1.0 - 2.0 * x
                } else {
                    0.5 * (4.0 * x).powf(-alpha)
                }
            }
            TailModel::TwoSidedPareto { alpha, x_min, .. }
            | TailModel::PositivePareto { alpha, x_min } => {
                if x < *x_min {
                    1.0
                } else {
                    (x / x_min).powf(-alpha)
                }
            }
            TailModel::Squared(inner) => inner.tail_prob(x.sqrt()),
        }
    }

    /// `P(Z <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            TailModel::PaperDensity { alpha } => {
                if x < -0.25 {
                    0.25 * (-4.0 * x).powf(-alpha)
                } else if x <= 0.25 {
                    0.5 + x
                } else {
                    1.0 - 0.25 * (4.0 * x).powf(-alpha)
                }
            }
            TailModel::TwoSidedPareto {
                alpha,
                p_plus,
                x_min,
            } => {
                let p_minus = 1.0 - p_plus;
                if x <= -x_min {
                    p_minus * (-x / x_min).powf(-alpha)
                } else if x < *x_min {
                    p_minus
                } else {
                    1.0 - p_plus * (x / x_min).powf(-alpha)
                }
            }
            TailModel::PositivePareto { .. } | TailModel::Squared(_) => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 - self.tail_prob(x)
                }
            }
        }
    }

    /// Inverse CDF on (0, 1).
    pub fn quantile(&self, u: f64) -> f64 {
        match self {
            TailModel::PaperDensity { alpha } => {
                if u < 0.25 {
                    -0.25 * (4.0 * u).powf(-1.0 / alpha)
                } else if u <= 0.75 {
                    u - 0.5
                } else {
                    0.25 * (4.0 * (1.0 - u)).powf(-1.0 / alpha)
                }
            }
            TailModel::TwoSidedPareto {
                alpha,
                p_plus,
                x_min,
            } => {
                let p_minus = 1.0 - p_plus;
                if u < p_minus {
                    -x_min * (u / p_minus).powf(-1.0 / alpha)
                } else {
                    x_min * ((1.0 - u) / p_plus).powf(-1.0 / alpha)
                }
            }
            TailModel::PositivePareto { .. } | TailModel::Squared(_) => {
                self.tail_inverse(1.0 - u)
            }
        }
    }

    /// Largest `x >= 0` with `P(|Z| > x) = q`, for `q` in (0, 1].
    pub fn tail_inverse(&self, q: f64) -> f64 {
        match self {
            TailModel::PaperDensity { alpha } => {
                if q > 0.5 {
                    0.5 * (1.0 - q)
                } else {
                    0.25 * (2.0 * q).powf(-1.0 / alpha)
                }
            }
            TailModel::TwoSidedPareto { alpha, x_min, .. }
            | TailModel::PositivePareto { alpha, x_min } => x_min * q.powf(-1.0 / alpha),
            TailModel::Squared(inner) => inner.tail_inverse(q).powi(2),
        }
    }

    /// One draw by inverse CDF; consumes one counter of `rng`.
    #[inline]
    pub fn sample(&self, rng: &mut CounterRng) -> f64 {
        self.quantile(rng.uniform())
    }

    /// One draw of `|Z|`; consumes one counter of `rng`.
    #[inline]
    pub fn sample_abs(&self, rng: &mut CounterRng) -> f64 {
        self.tail_inverse(rng.uniform())
    }

    /// The norming constant `a_k` solving `P(|Z| > a_k) = 1/k`.
    pub fn norming_constant(&self, k: u64) -> Result<f64> {
        if k == 0 {
            return Err(Error::invalid("k", "norming constant needs k >= 1"));
        }
        Ok(self.tail_inverse(1.0 / k as f64))
    }

    /// `a_k` by bisection on the tail function alone, relative tolerance 1e-12.
    ///
    /// The initial bracket is `[0, edge * k^(2/alpha)]`, widened by doubling if
    /// the upper end does not yet straddle the root.
    pub fn norming_constant_bisect(&self, k: u64) -> Result<f64> {
        if k == 0 {
            return Err(Error::invalid("k", "norming constant needs k >= 1"));
        }
        let target = 1.0 / k as f64;
        let mut lo = 0.0f64;
        let mut hi = self.support_edge() * (k as f64).powf(2.0 / self.alpha());
        while self.tail_prob(hi) > target {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if self.tail_prob(mid) >= target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi {
                break;
            }
        }
        Ok(hi)
    }

    /// `E[|Z|^exponent ; |Z| <= x]`, with `x = inf` allowed when the moment exists.
    pub fn truncated_abs_moment(&self, exponent: f64, x: f64) -> Result<f64> {
        if !(exponent > 0.0) {
            return Err(Error::invalid("exponent", "must be positive"));
        }
        if x.is_nan() {
            return Err(Error::invalid("x", "NaN truncation point"));
        }
        if x.is_infinite() && exponent >= self.alpha() {
            return Err(Error::DivergentMoment {
                exponent,
                alpha: self.alpha(),
            });
        }
        if x <= 0.0 {
            return Ok(0.0);
        }
        let e = exponent;
        Ok(match self {
            TailModel::PaperDensity { alpha } => {
                let core_end = x.min(0.25);
                let core = 2.0 * core_end.powf(e + 1.0) / (e + 1.0);
                if x <= 0.25 {
                    core
                } else {
                    core + 2.0 * alpha * 4f64.powf(-alpha - 1.0) * power_integral(e - alpha, 0.25, x)
                }
            }
            TailModel::TwoSidedPareto { alpha, x_min, .. }
            | TailModel::PositivePareto { alpha, x_min } => {
                if x < *x_min {
                    0.0
                } else {
                    alpha * x_min.powf(*alpha) * power_integral(e - alpha, *x_min, x)
                }
            }
            TailModel::Squared(inner) => inner.truncated_abs_moment(2.0 * e, x.sqrt())?,
        })
    }

    /// `E[Z^2]`, infinite when `alpha <= 2`.
    pub fn second_moment(&self) -> SecondMoment {
        if self.alpha() > 2.0 {
            match self.truncated_abs_moment(2.0, f64::INFINITY) {
                Ok(v) => SecondMoment::Finite(v),
                Err(_) => SecondMoment::Infinite,
            }
        } else {
            SecondMoment::Infinite
        }
    }

    /// `E[Z]` when `E|Z| < inf`.
    pub fn mean(&self) -> Option<f64> {
        if self.alpha() <= 1.0 {
            return None;
        }
        let abs_mean = self.truncated_abs_moment(1.0, f64::INFINITY).ok()?;
        Some((self.p_plus() - self.p_minus()) * abs_mean)
    }
}

impl fmt::Display for TailModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailModel::PaperDensity { alpha } => write!(f, "paper:alpha={alpha}"),
            TailModel::TwoSidedPareto {
                alpha,
                p_plus,
                x_min,
            } => write!(f, "pareto2:alpha={alpha},pplus={p_plus},xmin={x_min}"),
            TailModel::PositivePareto { alpha, x_min } => {
                write!(f, "pareto:alpha={alpha},xmin={x_min}")
            }
            TailModel::Squared(inner) => write!(f, "squared:{inner}"),
        }
    }
}

impl FromStr for TailModel {
    type Err = Error;

    /// Parses `paper:alpha=1.6`, `pareto:alpha=0.8,xmin=1`,
    /// `pareto2:alpha=1.6,pplus=0.5,xmin=1`, or `squared:<spec>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::DistSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        let (kind, rest) = s_trim
            .split_once(':')
            .ok_or_else(|| bad("expected `<kind>:<key>=<value>,...`"))?;
        if kind == "squared" {
            return Ok(rest.parse::<TailModel>()?.squared());
        }
        let mut alpha = None;
        let mut x_min = None;
        let mut p_plus = None;
        for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| bad("parameter without `=`"))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| bad(&format!("`{value}` is not a number")))?;
            let slot = match key.trim() {
                "alpha" => &mut alpha,
                "xmin" => &mut x_min,
                "pplus" => &mut p_plus,
                other => return Err(bad(&format!("unknown parameter `{other}`"))),
            };
            if slot.replace(value).is_some() {
                return Err(bad(&format!("duplicate parameter `{key}`")));
            }
        }
        let alpha = alpha.ok_or_else(|| bad("missing alpha"))?;
        let wrap = |e: Error| bad(&e.to_string());
        match kind {
            "paper" => {
                if x_min.is_some() || p_plus.is_some() {
                    return Err(bad("paper density takes only alpha"));
                }
                TailModel::paper(alpha).map_err(wrap)
            }
            "pareto" => {
                if p_plus.is_some() {
                    return Err(bad("one-sided pareto takes no pplus"));
                }
                TailModel::positive_pareto(alpha, x_min.unwrap_or(1.0)).map_err(wrap)
            }
            "pareto2" => TailModel::two_sided_pareto(alpha, p_plus.unwrap_or(0.5), x_min.unwrap_or(1.0))
                .map_err(wrap),
            other => Err(bad(&format!("unknown kind `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper(a: f64) -> TailModel {
        TailModel::paper(a).unwrap()
    }

    fn pareto(a: f64) -> TailModel {
        TailModel::positive_pareto(a, 1.0).unwrap()
    }

    #[test]
    fn tail_prob_examples() {
        assert_eq!(pareto(0.8).tail_prob(1.0), 1.0);
        assert!((pareto(0.8).tail_prob(2.0) - 0.574_349_177_498_517_6).abs() < 1e-12);
        assert!((paper(1.6).tail_prob(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn norming_constant_examples() {
        assert!((pareto(0.8).norming_constant(16).unwrap() - 32.0).abs() < 1e-12);
        assert_eq!(pareto(0.8).norming_constant(1).unwrap(), 1.0);
        for a in [0.5, 1.6, 3.0] {
            assert!((paper(a).norming_constant(2).unwrap() - 0.25).abs() < 1e-15);
        }
        assert!(matches!(
            pareto(0.8).norming_constant(0),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn bisection_agrees_with_closed_form() {
        let models = [
            paper(1.6),
            paper(0.7),
            pareto(0.8),
            TailModel::two_sided_pareto(2.5, 0.3, 2.0).unwrap(),
            paper(1.6).squared(),
        ];
        for m in &models {
            for k in [1u64, 2, 3, 10, 1000, 123_457, 1_000_000] {
                let closed = m.norming_constant(k).unwrap();
                let bis = m.norming_constant_bisect(k).unwrap();
                assert!(
                    (closed - bis).abs() <= 1e-11 * closed.max(1e-300) + 1e-15,
                    "{m} k={k}: {closed} vs {bis}"
                );
            }
        }
    }

    #[test]
    fn truncated_moment_examples() {
        let m = paper(1.6).truncated_abs_moment(2.0, 0.25).unwrap();
        assert!((m - 1.0 / 96.0).abs() < 1e-15);
        assert_eq!(paper(1.6).truncated_abs_moment(2.0, 0.0).unwrap(), 0.0);
        assert_eq!(pareto(0.8).truncated_abs_moment(2.0, 0.0).unwrap(), 0.0);
        assert!(matches!(
            paper(1.6).truncated_abs_moment(2.0, f64::INFINITY),
            Err(Error::DivergentMoment { .. })
        ));
    }

    #[test]
    fn karamata_ratio_for_pareto() {
        let d = pareto(0.8);
        let x = 1e4;
        let ratio = d.truncated_abs_moment(2.0, x).unwrap() / (x * x * d.tail_prob(x));
        let target = 0.8 / 1.2;
        assert!((ratio / target - 1.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn second_moments() {
        assert_eq!(paper(1.6).second_moment(), SecondMoment::Infinite);
        let pm = TailModel::two_sided_pareto(2.5, 0.5, 1.0)
            .unwrap()
            .second_moment()
            .finite()
            .unwrap();
        assert!((pm - 5.0).abs() < 1e-12);
        // 1/96 + alpha / (32 (alpha - 2)) at alpha = 3
        let p3 = paper(3.0).second_moment().finite().unwrap();
        assert!((p3 - 10.0 / 96.0).abs() < 1e-14);
    }

    #[test]
    fn means() {
        assert_eq!(paper(1.6).mean(), Some(0.0));
        assert_eq!(pareto(0.8).mean(), None);
        let m = pareto(1.6).mean().unwrap();
        assert!((m - 1.6 / 0.6).abs() < 1e-12);
    }

    #[test]
    fn squared_model_tail_is_base_tail_at_root() {
        let base = TailModel::two_sided_pareto(1.6, 0.3, 1.5).unwrap();
        let sq = base.squared();
        for x in [0.0, 0.5, 2.25, 3.0, 10.0, 1e6] {
            assert_eq!(sq.tail_prob(x), base.tail_prob(f64::sqrt(x)));
        }
        assert_eq!(sq.alpha(), 0.8);
    }

    #[test]
    fn quantile_inverts_cdf() {
        let models = [
            paper(1.6),
            pareto(0.8),
            TailModel::two_sided_pareto(1.6, 0.2, 1.0).unwrap(),
            paper(1.2).squared(),
        ];
        for m in &models {
            for u in [0.01, 0.1, 0.3, 0.5, 0.77, 0.9, 0.999] {
                let x = m.quantile(u);
                assert!((m.cdf(x) - u).abs() < 1e-12, "{m} u={u}");
            }
        }
    }

    #[test]
    fn samples_respect_support() {
        let mut rng = CounterRng::new(3);
        let p = pareto(0.8);
        let one_sided = TailModel::two_sided_pareto(1.6, 1.0, 1.0).unwrap();
        for _ in 0..10_000 {
            assert!(p.sample(&mut rng) >= 1.0);
            assert!(one_sided.sample(&mut rng) > 0.0);
        }
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "paper:alpha=1.6",
            "pareto:alpha=0.8,xmin=1",
            "pareto2:alpha=1.6,pplus=0.5,xmin=1",
            "squared:paper:alpha=1.6",
        ] {
            let m: TailModel = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!("paper".parse::<TailModel>().is_err());
        assert!("paper:alpha=5".parse::<TailModel>().is_err());
        assert!("gauss:alpha=1".parse::<TailModel>().is_err());
        assert!("pareto:alpha=1,alpha=2".parse::<TailModel>().is_err());
    }
}
