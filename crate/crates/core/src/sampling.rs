//! Seeded exponential lifetimes and type-II censored samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Mean lifetimes of strength (`alpha`) and stress (`beta`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialScales {
    alpha: f64,
    beta: f64,
}

impl ExponentialScales {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(
                    "ExponentialScales",
                    format!("{name} = {v} must be finite and > 0"),
                ));
            }
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// The first `observed` order statistics out of `total_units` items on test.
///
/// `ttt` is the total time on test, `sum(times) + (n - r) * max(times)`,
/// the complete sufficient statistic for the exponential mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CensoredSample {
    ordered_times: Vec<f64>,
    total_units: usize,
    ttt: f64,
}

impl CensoredSample {
    /// Builds a sample from already sorted failure times.
    pub fn new(ordered_times: Vec<f64>, total_units: usize) -> Result<Self> {
        let observed = ordered_times.len();
        if observed == 0 {
            return Err(Error::domain("CensoredSample", "at least one failure time is required"));
        }
        if observed > total_units {
            return Err(Error::domain(
                "CensoredSample",
                format!("observed count {observed} exceeds total units {total_units}"),
            ));
        }
        if let Some(bad) = ordered_times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(Error::domain(
                "CensoredSample",
                format!("failure time {bad} must be finite and nonnegative"),
            ));
        }
        if ordered_times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::domain("CensoredSample", "failure times must be nondecreasing"));
        }
        let ttt = total_time_on_test(&ordered_times, total_units);
        if !(ttt.is_finite() && ttt > 0.0) {
            return Err(Error::domain(
                "CensoredSample",
                format!("total time on test {ttt} must be finite and > 0"),
            ));
        }
        Ok(Self {
            ordered_times,
            total_units,
            ttt,
        })
    }

    /// Builds a sample from failure times in any order.
    pub fn from_unordered(mut times: Vec<f64>, total_units: usize) -> Result<Self> {
        times.sort_by(f64::total_cmp);
        Self::new(times, total_units)
    }

    pub fn ordered_times(&self) -> &[f64] {
        &self.ordered_times
    }

    pub fn total_units(&self) -> usize {
        self.total_units
    }

    pub fn observed(&self) -> usize {
        self.ordered_times.len()
    }

    pub fn ttt(&self) -> f64 {
        self.ttt
    }

    /// Same sample with every time multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::domain("CensoredSample::scaled", format!("factor {factor} must be > 0")));
        }
        Self::new(
            self.ordered_times.iter().map(|t| t * factor).collect(),
            self.total_units,
        )
    }
}

fn total_time_on_test(ordered: &[f64], total_units: usize) -> f64 {
    let last = ordered[ordered.len() - 1];
    ordered.iter().sum::<f64>() + (total_units - ordered.len()) as f64 * last
}

/// Paired strength and stress samples from one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct StressStrengthData {
    pub strength: CensoredSample,
    pub stress: CensoredSample,
}

impl StressStrengthData {
    pub fn new(strength: CensoredSample, stress: CensoredSample) -> Self {
        Self { strength, stress }
    }
}

/// Address of a reproducible random stream.
///
/// The generator is ChaCha8 keyed by `seed`, on the 64-bit ChaCha stream
/// `stream_id`. A stream can be split into a handful of lanes that start at
/// widely separated block counters, so they never overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    lane: u8,
}

/// Number of non-overlapping lanes per stream (each 2^60 blocks long).
pub const LANES_PER_STREAM: u8 = 16;

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self {
            seed,
            stream_id,
            lane: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Lane `lane` of this stream.
    ///
    /// # Panics
    /// If `lane >= LANES_PER_STREAM`.
    pub fn lane(self, lane: u8) -> Self {
        assert!(lane < LANES_PER_STREAM, "lane {lane} out of range");
        Self { lane, ..self }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn generator(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng.set_word_pos(u128::from(self.lane) << 64);
        rng
    }
}

/// `count` exponential draws with mean `scale`, by inverse CDF.
pub fn draw_exponential_sample(scale: f64, count: usize, rng: &RngStream) -> Result<Vec<f64>> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::domain(
            "draw_exponential_sample",
            format!("scale = {scale} must be finite and > 0"),
        ));
    }
    if count == 0 {
        return Err(Error::domain("draw_exponential_sample", "count must be >= 1"));
    }
    let mut gen = rng.generator();
    Ok((0..count)
        .map(|_| {
            let u: f64 = gen.random();
            -scale * (-u).ln_1p()
        })
        .collect())
}

/// Keeps the `observed` smallest values of `raw`; `raw.len()` is the number of units on test.
pub fn apply_type2_censoring(raw: &[f64], observed: usize) -> Result<CensoredSample> {
    if observed == 0 || observed > raw.len() {
        return Err(Error::domain(
            "apply_type2_censoring",
            format!("observed = {observed} must lie in 1..={}", raw.len()),
        ));
    }
    let mut sorted = raw.to_vec();
    // stable, so ties keep generation order
    sorted.sort_by(f64::total_cmp);
    sorted.truncate(observed);
    CensoredSample::new(sorted, raw.len())
}

/// Draws one strength sample (`n` units, `r1` failures) and one stress
/// sample (`m` units, `r2` failures) from lanes 0 and 1 of `rng`.
pub fn draw_dataset(
    params: ExponentialScales,
    n: usize,
    m: usize,
    r1: usize,
    r2: usize,
    rng: &RngStream,
) -> Result<StressStrengthData> {
    let strength_raw = draw_exponential_sample(params.alpha, n, &rng.lane(0))?;
    let stress_raw = draw_exponential_sample(params.beta, m, &rng.lane(1))?;
    Ok(StressStrengthData {
        strength: apply_type2_censoring(&strength_raw, r1)?,
        stress: apply_type2_censoring(&stress_raw, r2)?,
    })
}
