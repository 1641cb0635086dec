//! Confidence intervals for `R`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimators::mle_reliability;
use crate::sampling::StressStrengthData;
use crate::specfun::{f_quantile, normal_quantile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalMethod {
    /// Wald interval around the MLE with delta-method standard error.
    Asymptotic,
    /// Inversion of the F-distributed ratio of the two TTT statistics.
    Exact,
}

impl IntervalMethod {
    pub const ALL: [IntervalMethod; 2] = [IntervalMethod::Asymptotic, IntervalMethod::Exact];

    pub fn as_str(&self) -> &'static str {
        match self {
            IntervalMethod::Asymptotic => "asymptotic",
            IntervalMethod::Exact => "exact",
        }
    }
}

impl fmt::Display for IntervalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IntervalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asymptotic" => Ok(IntervalMethod::Asymptotic),
            "exact" => Ok(IntervalMethod::Exact),
            other => Err(Error::domain(
                "IntervalMethod",
                format!("unknown method '{other}', expected 'asymptotic' or 'exact'"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalEstimate {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub method: IntervalMethod,
}

impl IntervalEstimate {
    pub fn contains(&self, r: f64) -> bool {
        self.lower <= r && r <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

fn check_level(op: &'static str, level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("level = {level} must lie in (0, 1)")))
    }
}

/// Delta-method variance of the MLE of `R`:
/// `R^2 (1 - R)^2 (1/r1 + 1/r2)`, from the inverse information
/// `diag(alpha^2 / r1, beta^2 / r2)` and gradient `(beta, -alpha) / (alpha + beta)^2`.
pub fn delta_variance(r_hat: f64, r1: usize, r2: usize) -> Result<f64> {
    if !(r_hat > 0.0 && r_hat < 1.0) {
        return Err(Error::domain("delta_variance", format!("r_hat = {r_hat} must lie in (0, 1)")));
    }
    if r1 == 0 || r2 == 0 {
        return Err(Error::domain("delta_variance", "failure counts must be >= 1"));
    }
    let q = r_hat * (1.0 - r_hat);
    Ok(q * q * (1.0 / r1 as f64 + 1.0 / r2 as f64))
}

/// `R1 -/+ z sigma`, clamped to [0, 1].
pub fn asymptotic_ci(data: &StressStrengthData, level: f64) -> Result<IntervalEstimate> {
    check_level("asymptotic_ci", level)?;
    let r_hat = mle_reliability(data);
    let sigma = delta_variance(r_hat, data.strength.observed(), data.stress.observed())?.sqrt();
    let z = normal_quantile(0.5 * (1.0 + level))?;
    Ok(IntervalEstimate {
        lower: (r_hat - z * sigma).clamp(0.0, 1.0),
        upper: (r_hat + z * sigma).clamp(0.0, 1.0),
        level,
        method: IntervalMethod::Asymptotic,
    })
}

/// Exact interval from the pivot `(r1 V alpha) / (r2 Z beta) ~ F(2 r2, 2 r1)`.
///
/// With `W = r1 V / (r2 Z)`, `R = 1 / (1 + W / F)` is increasing in the pivot
/// value `F`, so the `a/2` and `1 - a/2` quantiles map to the lower and upper bound.
pub fn exact_ci(data: &StressStrengthData, level: f64) -> Result<IntervalEstimate> {
    check_level("exact_ci", level)?;
    let (r1, r2) = (data.strength.observed(), data.stress.observed());
    let w = (r1 as f64 * data.stress.ttt()) / (r2 as f64 * data.strength.ttt());
    let (d1, d2) = (2 * r2 as u32, 2 * r1 as u32);
    let a = 1.0 - level;
    let f_lo = f_quantile(0.5 * a, d1, d2)?;
    let f_hi = f_quantile(1.0 - 0.5 * a, d1, d2)?;
    Ok(IntervalEstimate {
        lower: 1.0 / (1.0 + w / f_lo),
        upper: 1.0 / (1.0 + w / f_hi),
        level,
        method: IntervalMethod::Exact,
    })
}

pub fn interval(
    data: &StressStrengthData,
    level: f64,
    method: IntervalMethod,
) -> Result<IntervalEstimate> {
    match method {
        IntervalMethod::Asymptotic => asymptotic_ci(data, level),
        IntervalMethod::Exact => exact_ci(data, level),
    }
}
