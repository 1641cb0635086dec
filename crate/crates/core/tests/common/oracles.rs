//! Independent reference computations used by the integration and
//! acceptance tests. Nothing here calls into the library's numerics.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Product Gauss-Legendre rule on [lo, hi].
pub fn gl_integrate(rule: &(Vec<f64>, Vec<f64>), lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Conditional density of the first normalized spacing given its TTT `total`.
pub fn spacing_density(x: f64, r: usize, total: f64) -> f64 {
    (r - 1) as f64 * (total - x).powi(r as i32 - 2) / total.powi(r as i32 - 1)
}

/// P(e1 < d1 | Z, V) as the 2-D integral of the product of the two
/// conditional spacing densities over {v1 < z1}, for r1, r2 >= 2.
///
/// Both densities are polynomials, so the product rule over the region
/// pieces (outer split at min(Z, V)) is exact to rounding.
pub fn umvue_region_oracle(r1: usize, z: f64, r2: usize, v: f64) -> f64 {
    assert!(r1 >= 2 && r2 >= 2);
    let rule = gauss_legendre(40);
    let inner = |z1: f64| {
        let top = z1.min(v);
        gl_integrate(&rule, 0.0, top, |v1| spacing_density(v1, r2, v))
    };
    let outer = |z1: f64| spacing_density(z1, r1, z) * inner(z1);
    let split = z.min(v);
    let mut total = gl_integrate(&rule, 0.0, split, outer);
    if split < z {
        total += gl_integrate(&rule, split, z, outer);
    }
    total
}

/// Monte Carlo posterior mean of `R = zeta G2 / (zeta G2 + tau G1)` with
/// `G1 ~ Gamma(a1)`, `G2 ~ Gamma(a2)`. Returns `(mean, standard error)`.
pub fn posterior_mc_oracle(a1: f64, zeta: f64, a2: f64, tau: f64, draws: usize, seed: u64) -> (f64, f64) {
    const CHUNK: usize = 100_000;
    let chunks = draws.div_ceil(CHUNK);
    let g1 = Gamma::new(a1, 1.0).unwrap();
    let g2 = Gamma::new(a2, 1.0).unwrap();
    let (sum, sum_sq, count) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(draws - c * CHUNK);
            let mut s = 0.0;
            let mut s2 = 0.0;
            for _ in 0..len {
                let x1: f64 = g1.sample(&mut rng);
                let x2: f64 = g2.sample(&mut rng);
                let r = zeta * x2 / (zeta * x2 + tau * x1);
                s += r;
                s2 += r * r;
            }
            (s, s2, len)
        })
        .reduce(|| (0.0, 0.0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let n = count as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean) * n / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// CDF of chi-square with even degrees of freedom `2k`:
/// `1 - exp(-x/2) sum_{j<k} (x/2)^j / j!`.
pub fn chisq_even_cdf(x: f64, k: usize) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let h = 0.5 * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..k {
        term *= h / j as f64;
        sum += term;
    }
    1.0 - (-h).exp() * sum
}

/// Kolmogorov-Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic KS critical value at level 0.01.
pub fn ks_critical_01(n: usize) -> f64 {
    1.627_6 / (n as f64).sqrt()
}

pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
