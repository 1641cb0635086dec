//! CDFs and quantiles of the normal, chi-square and F distributions.
//!
//! Quantiles invert the CDFs by safeguarded Newton iteration: every iterate
//! shrinks a bracket `[lo, hi]` with `cdf(lo) <= p <= cdf(hi)`, and a Newton
//! step that leaves the bracket is replaced by bisection.

use super::beta::reg_incomplete_beta_unchecked;
use super::gamma::{ln_beta, ln_gamma_unchecked, reg_gamma_pq};
use crate::error::{Error, Result};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const MAX_NEWTON: usize = 300;

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    // Phi(z) = erfc(-z / sqrt 2) / 2 and erfc(t) = Q(1/2, t^2) for t >= 0
    let t2 = 0.5 * z * z;
    let (p, q) = reg_gamma_pq(0.5, t2);
    if z < 0.0 {
        0.5 * q
    } else {
        0.5 + 0.5 * p
    }
}

pub fn normal_pdf(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}

/// CDF of the chi-square distribution with `d` degrees of freedom.
pub fn chisq_cdf(x: f64, d: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    reg_gamma_pq(0.5 * d as f64, 0.5 * x).0
}

fn chisq_pdf(x: f64, d: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let k = 0.5 * d as f64;
    ((k - 1.0) * x.ln() - 0.5 * x - k * std::f64::consts::LN_2 - ln_gamma_unchecked(k)).exp()
}

/// CDF of the F distribution with `(d1, d2)` degrees of freedom.
pub fn f_cdf(q: f64, d1: u32, d2: u32) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    let (d1, d2) = (d1 as f64, d2 as f64);
    let x = d1 * q / (d1 * q + d2);
    reg_incomplete_beta_unchecked(0.5 * d1, 0.5 * d2, x)
}

fn beta_pdf(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    ((a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - ln_beta(a, b)).exp()
}

fn check_probability(op: &'static str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("p = {p} must lie in (0, 1)")))
    }
}

/// Solves `cdf(x) = p` inside a valid bracket starting from `x0`.
fn invert_cdf(
    cdf: impl Fn(f64) -> f64,
    pdf: impl Fn(f64) -> f64,
    p: f64,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
) -> Result<f64> {
    let mut x = if x0 > lo && x0 < hi { x0 } else { 0.5 * (lo + hi) };
    for _ in 0..MAX_NEWTON {
        let f = cdf(x) - p;
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let slope = pdf(x);
        let newton = x - f / slope;
        let next = if slope > 0.0 && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let scale = next.abs().max(f64::MIN_POSITIVE);
        if (next - x).abs() <= 4.0 * f64::EPSILON * scale || hi - lo <= 4.0 * f64::EPSILON * scale
        {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::QuantileInversion {
        p,
        reason: format!("no convergence after {MAX_NEWTON} iterations"),
    })
}

/// Quantile of the standard normal distribution.
pub fn normal_quantile(p: f64) -> Result<f64> {
    check_probability("normal_quantile", p)?;
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        return lower_normal_quantile(1.0 - p).map(|z| -z);
    }
    lower_normal_quantile(p)
}

fn lower_normal_quantile(p: f64) -> Result<f64> {
    // rational starting point, |error| < 4.5e-4
    let t = (-2.0 * p.ln()).sqrt();
    let x0 = -(t
        - (2.515_517 + 0.802_853 * t + 0.010_328 * t * t)
            / (1.0 + 1.432_788 * t + 0.189_269 * t * t + 0.001_308 * t * t * t));
    invert_cdf(normal_cdf, normal_pdf, p, -40.0, 0.0, x0)
}

fn check_dof(op: &'static str, d: u32) -> Result<()> {
    if d == 0 {
        Err(Error::domain(op, "degrees of freedom must be >= 1"))
    } else {
        Ok(())
    }
}

/// Quantile of the chi-square distribution with `d` degrees of freedom.
pub fn chisq_quantile(p: f64, d: u32) -> Result<f64> {
    check_probability("chisq_quantile", p)?;
    check_dof("chisq_quantile", d)?;
    let k = d as f64;
    let mut hi = k.max(1.0);
    while chisq_cdf(hi, d) < p {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::QuantileInversion {
                p,
                reason: "could not bracket the chi-square quantile".into(),
            });
        }
    }
    // Wilson-Hilferty starting point
    let z = lower_normal_quantile(p.min(1.0 - p))
        .map(|z| if p > 0.5 { -z } else { z })
        .unwrap_or(0.0);
    let c = 2.0 / (9.0 * k);
    let x0 = k * (1.0 - c + z * c.sqrt()).powi(3);
    invert_cdf(|x| chisq_cdf(x, d), |x| chisq_pdf(x, d), p, 0.0, hi, x0)
}

/// Quantile of the F distribution with `(d1, d2)` degrees of freedom.
///
/// Inverts the equivalent Beta(d1/2, d2/2) variable on (0, 1) and maps back
/// through `q = d2 x / (d1 (1 - x))`.
pub fn f_quantile(p: f64, d1: u32, d2: u32) -> Result<f64> {
    check_probability("f_quantile", p)?;
    check_dof("f_quantile", d1)?;
    check_dof("f_quantile", d2)?;
    let (a, b) = (0.5 * d1 as f64, 0.5 * d2 as f64);
    let x = invert_cdf(
        |x| reg_incomplete_beta_unchecked(a, b, x),
        |x| beta_pdf(x, a, b),
        p,
        0.0,
        1.0,
        a / (a + b),
    )?;
    Ok(d2 as f64 * x / (d1 as f64 * (1.0 - x)))
}
