//! Monte Carlo study engine: replicated estimation, MSE and bias summaries,
//! and interval coverage.
//!
//! Replicate `i` of a cell always draws its dataset from `RngStream::new(seed, i)`,
//! so results do not depend on how cells are scheduled across threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimators::{estimate_all, true_reliability, EstimateSet, GammaPrior};
use crate::intervals::{interval, IntervalMethod};
use crate::sampling::{draw_dataset, ExponentialScales, RngStream, StressStrengthData};

pub const DEFAULT_REPLICATES: usize = 2999;

/// One cell of a simulation study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimCellConfig {
    pub params: ExponentialScales,
    pub n: usize,
    pub m: usize,
    pub r1: usize,
    pub r2: usize,
    pub replicates: usize,
    pub seed: u64,
    pub prior_strength: GammaPrior,
    pub prior_stress: GammaPrior,
    pub level: f64,
}

impl SimCellConfig {
    /// A cell with 2999 replicates, seed 0, non-informative priors and level 0.95.
    pub fn new(params: ExponentialScales, n: usize, m: usize, r1: usize, r2: usize) -> Self {
        Self {
            params,
            n,
            m,
            r1,
            r2,
            replicates: DEFAULT_REPLICATES,
            seed: 0,
            prior_strength: GammaPrior::non_informative(),
            prior_stress: GammaPrior::non_informative(),
            level: 0.95,
        }
    }

    pub fn with_replicates(mut self, replicates: usize) -> Self {
        self.replicates = replicates;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_priors(mut self, strength: GammaPrior, stress: GammaPrior) -> Self {
        self.prior_strength = strength;
        self.prior_stress = stress;
        self
    }

    pub fn with_level(mut self, level: f64) -> Self {
        self.level = level;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.r1 == 0 || self.r1 > self.n {
            problems.push(format!("r1 = {} must lie in 1..=n (n = {})", self.r1, self.n));
        }
        if self.r2 == 0 || self.r2 > self.m {
            problems.push(format!("r2 = {} must lie in 1..=m (m = {})", self.r2, self.m));
        }
        if self.replicates == 0 {
            problems.push("replicates must be >= 1".to_string());
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            problems.push(format!("level = {} must lie in (0, 1)", self.level));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::domain("SimCellConfig", problems.join("; ")))
        }
    }

    /// Dataset of replicate `index`.
    pub fn dataset(&self, index: usize) -> Result<StressStrengthData> {
        draw_dataset(
            self.params,
            self.n,
            self.m,
            self.r1,
            self.r2,
            &RngStream::new(self.seed, index as u64),
        )
    }
}

/// Welford running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Running {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Running {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn population_variance(&self) -> f64 {
        self.m2 / self.count as f64
    }

    fn sample_sd(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).sqrt()
        }
    }
}

/// Summary of one simulated cell. Arrays are indexed R1, R2, R3, R4.
#[derive(Debug, Clone, PartialEq)]
pub struct SimCellResult {
    pub config_echo: SimCellConfig,
    pub true_r: f64,
    pub mean_estimates: EstimateSet,
    pub mse: [f64; 4],
    pub bias: [f64; 4],
    /// Population variance of each estimator over the replicates.
    pub variance: [f64; 4],
    /// Standard error of each MSE: sample SD of the squared errors over sqrt(replicates).
    pub mc_stderr: [f64; 4],
}

pub fn run_cell(config: &SimCellConfig) -> Result<SimCellResult> {
    config.validate()?;
    let true_r = true_reliability(config.params);
    let mut estimates = [Running::default(); 4];
    let mut errors = [Running::default(); 4];
    let mut squared = [Running::default(); 4];

    for i in 0..config.replicates {
        let set = config
            .dataset(i)
            .and_then(|d| estimate_all(&d, config.prior_strength, config.prior_stress))
            .map_err(|e| Error::Replicate {
                index: i,
                source: Box::new(e),
            })?;
        for (k, est) in set.to_array().into_iter().enumerate() {
            let err = est - true_r;
            estimates[k].push(est);
            errors[k].push(err);
            squared[k].push(err * err);
        }
    }

    let root_n = (config.replicates as f64).sqrt();
    let mean = estimates.map(|r| r.mean);
    Ok(SimCellResult {
        config_echo: *config,
        true_r,
        mean_estimates: EstimateSet {
            r1_mle: mean[0],
            r2_umvue: mean[1],
            r3_bayes_conjugate: mean[2],
            r4_bayes_noninf: mean[3],
        },
        mse: squared.map(|r| r.mean),
        bias: errors.map(|r| r.mean),
        variance: errors.map(|r| r.population_variance()),
        mc_stderr: squared.map(|r| r.sample_sd() / root_n),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageResult {
    pub config_echo: SimCellConfig,
    pub method: IntervalMethod,
    pub empirical_coverage: f64,
    pub mean_width: f64,
}

/// Fraction of replicate intervals at `config.level` that contain the true `R`.
pub fn run_coverage(config: &SimCellConfig, method: IntervalMethod) -> Result<CoverageResult> {
    config.validate()?;
    let true_r = true_reliability(config.params);
    let mut hits = 0usize;
    let mut width = Running::default();
    for i in 0..config.replicates {
        let ci = config
            .dataset(i)
            .and_then(|d| interval(&d, config.level, method))
            .map_err(|e| Error::Replicate {
                index: i,
                source: Box::new(e),
            })?;
        if ci.contains(true_r) {
            hits += 1;
        }
        width.push(ci.width());
    }
    Ok(CoverageResult {
        config_echo: *config,
        method,
        empirical_coverage: hits as f64 / config.replicates as f64,
        mean_width: width.mean,
    })
}

/// Runs every cell, in parallel on the current rayon pool. Output order
/// matches input order; a failing cell does not affect the others.
pub fn run_grid(configs: &[SimCellConfig]) -> Vec<Result<SimCellResult>> {
    configs.par_iter().map(run_cell).collect()
}
