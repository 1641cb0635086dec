//! Point estimators of the stress-strength reliability `R = P(Y < X)`.
//!
//! * `R1`: maximum likelihood, plug-in of the two TTT-based scale MLEs.
//! * `R2`: UMVUE, the Rao-Blackwellized indicator `1{e1 < d1}` where `d1 = n x(1)`
//!   and `e1 = m y(1)` are the first normalized spacings, conditioned on the
//!   two TTT statistics.
//! * `R3`: posterior mean under independent inverse-scale gamma priors.
//! * `R4`: `R3` with the improper `1/alpha`, `1/beta` priors.

use crate::error::{Error, Result};
use crate::sampling::{CensoredSample, ExponentialScales, StressStrengthData};
use crate::specfun::{integrate_1d, ln_beta, QuadratureSpec};

/// Hyperparameters of the prior `pi(a) ~ a^-(u+1) exp(-v / a)` on a mean lifetime.
///
/// `(0, 0)` is the non-informative prior `pi(a) ~ 1/a`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GammaPrior {
    shape_u: f64,
    scale_v: f64,
}

impl GammaPrior {
    pub fn new(shape_u: f64, scale_v: f64) -> Result<Self> {
        for (name, v) in [("shape_u", shape_u), ("scale_v", scale_v)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::domain(
                    "GammaPrior",
                    format!("{name} = {v} must be finite and >= 0"),
                ));
            }
        }
        Ok(Self { shape_u, scale_v })
    }

    pub const fn non_informative() -> Self {
        Self {
            shape_u: 0.0,
            scale_v: 0.0,
        }
    }

    pub fn shape_u(&self) -> f64 {
        self.shape_u
    }

    pub fn scale_v(&self) -> f64 {
        self.scale_v
    }

    pub fn is_non_informative(&self) -> bool {
        self.shape_u == 0.0 && self.scale_v == 0.0
    }
}

/// Inverse-scale gamma posterior of a mean lifetime: density `~ a^-(shape+1) exp(-scale / a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorParams {
    shape: f64,
    scale: f64,
}

impl PosteriorParams {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        for (name, v) in [("shape", shape), ("scale", scale)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(
                    "PosteriorParams",
                    format!("{name} = {v} must be finite and > 0"),
                ));
            }
        }
        Ok(Self { shape, scale })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// The four point estimates for one dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateSet {
    pub r1_mle: f64,
    pub r2_umvue: f64,
    pub r3_bayes_conjugate: f64,
    pub r4_bayes_noninf: f64,
}

impl EstimateSet {
    pub fn to_array(&self) -> [f64; 4] {
        [
            self.r1_mle,
            self.r2_umvue,
            self.r3_bayes_conjugate,
            self.r4_bayes_noninf,
        ]
    }
}

/// `alpha / (alpha + beta)`.
pub fn true_reliability(params: ExponentialScales) -> f64 {
    params.alpha() / (params.alpha() + params.beta())
}

/// MLE of the mean lifetime: total time on test over the number of failures.
pub fn mle_scale(sample: &CensoredSample) -> f64 {
    sample.ttt() / sample.observed() as f64
}

pub fn mle_reliability(data: &StressStrengthData) -> f64 {
    let a = mle_scale(&data.strength);
    let b = mle_scale(&data.stress);
    a / (a + b)
}

/// UMVUE of `R`.
pub fn umvue_reliability(data: &StressStrengthData) -> Result<f64> {
    umvue_from_statistics(
        data.strength.observed(),
        data.strength.ttt(),
        data.stress.observed(),
        data.stress.ttt(),
    )
}

/// UMVUE of `R` from the failure counts and TTT statistics `z` (strength)
/// and `v` (stress).
///
/// With `t = d1 / z`, the conditional density of `t` is
/// `(r1 - 1)(1 - t)^(r1 - 2)` on (0, 1) and `P(e1 < t z | v)` is
/// `1 - (1 - t z / v)^(r2 - 1)` (1 once `t z >= v`), so
///
/// ```text
/// R2 = int_0^c (r1-1)(1-t)^(r1-2) [1 - (1 - t z/v)^(r2-1)] dt + 1{v < z} (1 - v/z)^(r1-1)
/// ```
///
/// with `c = min(1, v / z)`. A count of one makes the corresponding spacing
/// equal to its TTT and the integral collapses.
pub fn umvue_from_statistics(r1: usize, z: f64, r2: usize, v: f64) -> Result<f64> {
    if r1 == 0 || r2 == 0 {
        return Err(Error::domain("umvue_reliability", "failure counts must be >= 1"));
    }
    if !(z.is_finite() && v.is_finite() && z > 0.0 && v > 0.0) {
        return Err(Error::domain(
            "umvue_reliability",
            format!("TTT statistics must be finite and > 0, got z = {z}, v = {v}"),
        ));
    }
    let ratio = z / v;
    let tail = |r1: usize| {
        if v < z {
            (1.0 - v / z).powi(r1 as i32 - 1)
        } else {
            0.0
        }
    };
    let value = match (r1, r2) {
        (1, 1) => {
            if v < z {
                1.0
            } else {
                0.0
            }
        }
        (1, _) => 1.0 - (1.0 - ratio.min(1.0)).powi(r2 as i32 - 1),
        (_, 1) => tail(r1),
        _ => {
            let k1 = r1 as i32 - 2;
            let k2 = r2 as i32 - 1;
            let c = (v / z).min(1.0);
            let integrand = |t: f64| {
                let below = (1.0 - ratio * t).max(0.0);
                (r1 - 1) as f64 * (1.0 - t).powi(k1) * (1.0 - below.powi(k2))
            };
            // the weight (1-t)^(r1-2) has width ~ 1/r1 near t = 0
            let width = 1.0 / (r1 - 1) as f64;
            let cuts = [0.0, (4.0 * width).min(c), (16.0 * width).min(c), c];
            integrate_pieces(integrand, &cuts)? + tail(r1)
        }
    };
    Ok(value.clamp(0.0, 1.0))
}

fn integrate_pieces(f: impl Fn(f64) -> f64, cuts: &[f64]) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let pieces = (cuts.len() - 1) as f64;
    let spec = QuadratureSpec::new(spec.abs_tolerance() / pieces, spec.max_subdivisions())?;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        if w[1] > w[0] {
            total += integrate_1d(&f, w[0], w[1], spec)?;
        }
    }
    Ok(total)
}

/// Posterior shape `u + r` and scale `v + TTT`.
pub fn posterior_params(sample: &CensoredSample, prior: GammaPrior) -> Result<PosteriorParams> {
    PosteriorParams::new(
        prior.shape_u + sample.observed() as f64,
        prior.scale_v + sample.ttt(),
    )
}

/// Posterior mean of `alpha / (alpha + beta)` for independent inverse-scale
/// gamma posteriors on `alpha` and `beta`.
///
/// Writing `alpha = zeta / G1`, `beta = tau / G2` with standard gammas `G1`,
/// `G2` and `b = G1 / (G1 + G2) ~ Beta(a1, a2)`:
///
/// ```text
/// E[R] = int_0^1 zeta (1-b) / (zeta (1-b) + tau b) Beta(b; a1, a2) db
/// ```
pub fn posterior_mean_reliability(
    strength: PosteriorParams,
    stress: PosteriorParams,
) -> Result<f64> {
    let (a1, a2) = (strength.shape, stress.shape);
    let k = stress.scale / strength.scale;
    let log_norm = ln_beta(a1, a2);
    let integrand = |b: f64| {
        let one_minus = 1.0 - b;
        let weight = ((a1 - 1.0) * b.ln() + (a2 - 1.0) * (-b).ln_1p() - log_norm).exp();
        one_minus / (one_minus + k * b) * weight
    };
    // bracket the bulk of the Beta weight so a narrow peak is never stepped over
    let mean = a1 / (a1 + a2);
    let sd = (mean * (1.0 - mean) / (a1 + a2 + 1.0)).sqrt();
    let lo = (mean - 8.0 * sd).max(0.0);
    let hi = (mean + 8.0 * sd).min(1.0);
    let value = integrate_pieces(integrand, &[0.0, lo, mean, hi, 1.0])?;
    Ok(value.clamp(0.0, 1.0))
}

/// `R3`: Bayes estimator under conjugate priors on `alpha` and `beta`.
pub fn bayes_reliability(
    data: &StressStrengthData,
    prior_strength: GammaPrior,
    prior_stress: GammaPrior,
) -> Result<f64> {
    posterior_mean_reliability(
        posterior_params(&data.strength, prior_strength)?,
        posterior_params(&data.stress, prior_stress)?,
    )
}

/// `R4`: Bayes estimator under the non-informative priors.
pub fn bayes_noninf_reliability(data: &StressStrengthData) -> Result<f64> {
    bayes_reliability(data, GammaPrior::non_informative(), GammaPrior::non_informative())
}

pub fn estimate_all(
    data: &StressStrengthData,
    prior_strength: GammaPrior,
    prior_stress: GammaPrior,
) -> Result<EstimateSet> {
    Ok(EstimateSet {
        r1_mle: mle_reliability(data),
        r2_umvue: umvue_reliability(data)?,
        r3_bayes_conjugate: bayes_reliability(data, prior_strength, prior_stress)?,
        r4_bayes_noninf: bayes_noninf_reliability(data)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(times: &[f64], n: usize) -> CensoredSample {
        CensoredSample::new(times.to_vec(), n).unwrap()
    }

    #[test]
    fn true_reliability_captions() {
        let r = |a, b| true_reliability(ExponentialScales::new(a, b).unwrap());
        assert!((r(2.0, 3.0) - 0.4).abs() < 1e-15);
        assert!((r(2.0, 6.0) - 0.25).abs() < 1e-15);
        assert!((r(7.0, 7.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mle_scale_examples() {
        assert!((mle_scale(&sample(&[0.5, 1.0, 1.5], 5)) - 2.0).abs() < 1e-15);
        assert!((mle_scale(&sample(&[1.0, 2.0, 6.0], 3)) - 3.0).abs() < 1e-15);
        assert_eq!(mle_scale(&sample(&[1.25], 1)), 1.25);
    }

    #[test]
    fn mle_reliability_symmetry() {
        let s = sample(&[0.3, 0.9, 1.4], 4);
        let d = StressStrengthData::new(s.clone(), s);
        assert_eq!(mle_reliability(&d), 0.5);
        let d = StressStrengthData::new(sample(&[2.0], 1), sample(&[3.0], 1));
        assert!((mle_reliability(&d) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn umvue_degenerate_cases() {
        assert_eq!(umvue_from_statistics(1, 3.0, 1, 2.0).unwrap(), 1.0);
        assert_eq!(umvue_from_statistics(1, 2.0, 1, 3.0).unwrap(), 0.0);
        // r1 = 1: H(Z; r2, V)
        let h = 1.0 - (1.0 - 2.0f64 / 5.0).powi(3);
        assert!((umvue_from_statistics(1, 2.0, 4, 5.0).unwrap() - h).abs() < 1e-15);
        assert_eq!(umvue_from_statistics(1, 6.0, 4, 5.0).unwrap(), 1.0);
        // r2 = 1: P(d1 > V | Z)
        let t = (1.0 - 2.0f64 / 5.0).powi(3);
        assert!((umvue_from_statistics(4, 5.0, 1, 2.0).unwrap() - t).abs() < 1e-15);
        assert_eq!(umvue_from_statistics(4, 2.0, 1, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn umvue_exchangeable_half() {
        for r in [2, 3, 5, 8, 24, 60] {
            for z in [0.7, 6.0, 130.0] {
                let v = umvue_from_statistics(r, z, r, z).unwrap();
                assert!((v - 0.5).abs() < 1e-9, "r={r} z={z}: {v}");
            }
        }
    }

    #[test]
    fn umvue_complementary_pairs() {
        // R2(r1, Z, r2, V) + R2(r2, V, r1, Z) = 1 since ties have probability zero
        for &(r1, r2, z, v) in &[(3, 5, 6.0, 4.0), (8, 2, 1.0, 9.0), (12, 7, 5.5, 5.0)] {
            let s = umvue_from_statistics(r1, z, r2, v).unwrap()
                + umvue_from_statistics(r2, v, r1, z).unwrap();
            assert!((s - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn umvue_rejects_bad_statistics() {
        assert!(umvue_from_statistics(0, 1.0, 2, 1.0).is_err());
        assert!(umvue_from_statistics(2, 0.0, 2, 1.0).is_err());
        assert!(umvue_from_statistics(2, 1.0, 2, f64::NAN).is_err());
    }

    #[test]
    fn posterior_params_examples() {
        let s = sample(&[1.0, 1.0, 1.0], 4); // ttt = 4
        let p = posterior_params(&s, GammaPrior::new(2.0, 1.0).unwrap()).unwrap();
        assert_eq!((p.shape(), p.scale()), (5.0, 5.0));
        let p = posterior_params(&s, GammaPrior::non_informative()).unwrap();
        assert_eq!((p.shape(), p.scale()), (3.0, 4.0));
    }

    #[test]
    fn prior_validation() {
        assert!(GammaPrior::new(-1.0, 0.0).is_err());
        assert!(GammaPrior::new(0.0, f64::NAN).is_err());
        assert!(GammaPrior::default().is_non_informative());
        assert!(PosteriorParams::new(0.0, 1.0).is_err());
    }

    #[test]
    fn posterior_mean_symmetric_half() {
        for &(a, s) in &[(1.0, 1.0), (4.0, 8.0), (25.0, 0.01), (300.0, 7.0)] {
            let p = PosteriorParams::new(a, s).unwrap();
            let v = posterior_mean_reliability(p, p).unwrap();
            assert!((v - 0.5).abs() < 1e-9, "a={a}: {v}");
        }
    }

    #[test]
    fn posterior_mean_extreme_scale_ratio() {
        let strength = PosteriorParams::new(4.0, 8.0).unwrap();
        let stress = PosteriorParams::new(3.0, 8.0e6).unwrap();
        assert!(posterior_mean_reliability(strength, stress).unwrap() < 0.01);
    }

    #[test]
    fn posterior_mean_one_one_closed_form() {
        // a1 = a2 = 1: b uniform, E = int_0^1 (1-b)/((1-b) + k b) db
        //            = (k ln k - k + 1) / (k - 1)^2
        for &k in &[0.2, 3.0, 40.0] {
            let f: f64 = k;
            let exact = (f * f.ln() - f + 1.0) / ((f - 1.0) * (f - 1.0));
            let got = posterior_mean_reliability(
                PosteriorParams::new(1.0, 1.0).unwrap(),
                PosteriorParams::new(1.0, k).unwrap(),
            )
            .unwrap();
            assert!((got - exact).abs() < 1e-10, "k={k}: {got} vs {exact}");
        }
    }

    #[test]
    fn estimate_all_symmetric_data() {
        let s = sample(&[0.2, 0.5, 0.9, 1.1], 6);
        let d = StressStrengthData::new(s.clone(), s);
        let prior = GammaPrior::new(1.5, 2.0).unwrap();
        let e = estimate_all(&d, prior, prior).unwrap();
        for v in e.to_array() {
            assert!((v - 0.5).abs() < 1e-9);
        }
        assert_eq!(e, estimate_all(&d, prior, prior).unwrap());
    }

    #[test]
    fn scale_equivariance() {
        let d = StressStrengthData::new(sample(&[0.3, 0.8, 1.9], 5), sample(&[0.1, 0.4, 0.45, 2.2], 6));
        for c in [0.001, 0.37, 12.5, 4096.0] {
            let dc = StressStrengthData::new(d.strength.scaled(c).unwrap(), d.stress.scaled(c).unwrap());
            assert!((mle_reliability(&d) - mle_reliability(&dc)).abs() < 1e-15);
            assert!((mle_scale(&dc.strength) - c * mle_scale(&d.strength)).abs() <= 4.0 * f64::EPSILON * c);
            let u = umvue_reliability(&d).unwrap() - umvue_reliability(&dc).unwrap();
            assert!(u.abs() < 1e-8);
            let b = bayes_noninf_reliability(&d).unwrap() - bayes_noninf_reliability(&dc).unwrap();
            assert!(b.abs() < 1e-8);
        }
    }
}
