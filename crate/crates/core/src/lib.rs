//! Estimation of the stress-strength reliability `R = P(Y < X)` for
//! independent exponential strength `X` (mean `alpha`) and stress `Y`
//! (mean `beta`) observed under type-II censoring.
//!
//! The crate provides the maximum likelihood, UMVUE and two Bayes point
//! estimators, asymptotic and exact confidence intervals, and a seeded
//! Monte Carlo engine for comparing them.
//!
//! ```
//! use ssrel_core::{estimate_all, CensoredSample, GammaPrior, StressStrengthData};
//!
//! let strength = CensoredSample::new(vec![0.4, 1.1, 2.3], 5).unwrap();
//! let stress = CensoredSample::new(vec![0.2, 0.9, 1.0, 3.1], 4).unwrap();
//! let data = StressStrengthData::new(strength, stress);
//! let est = estimate_all(&data, GammaPrior::default(), GammaPrior::default()).unwrap();
//! assert!(est.r1_mle > 0.0 && est.r1_mle < 1.0);
//! ```

pub mod error;
pub mod estimators;
pub mod intervals;
pub mod sampling;
pub mod simulation;
pub mod specfun;

pub use error::{Error, Result};
pub use estimators::{
    bayes_noninf_reliability, bayes_reliability, estimate_all, mle_reliability, mle_scale,
    posterior_mean_reliability, posterior_params, true_reliability, umvue_from_statistics,
    umvue_reliability, EstimateSet, GammaPrior, PosteriorParams,
};
pub use intervals::{
    asymptotic_ci, delta_variance, exact_ci, interval, IntervalEstimate, IntervalMethod,
};
pub use sampling::{
    apply_type2_censoring, draw_dataset, draw_exponential_sample, CensoredSample,
    ExponentialScales, RngStream, StressStrengthData,
};
pub use simulation::{
    run_cell, run_coverage, run_grid, CoverageResult, SimCellConfig, SimCellResult,
    DEFAULT_REPLICATES,
};
