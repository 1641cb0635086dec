//! Execution of a validated manifest.

use std::path::Path;

use anyhow::{bail, Context, Result};
use ssrel_core::{
    draw_dataset, estimate_all, interval, run_coverage, run_grid, ExponentialScales, GammaPrior,
    RngStream, SimCellConfig, SimCellResult, StressStrengthData,
};

use crate::args::{DataArgs, RunManifest};
use crate::format::NumberFormat;
use crate::io::{self, GridRow};

pub const ESTIMATE_HEADER: [&str; 4] = ["R1", "R2", "R3", "R4"];
pub const CI_HEADER: [&str; 4] = ["lower", "upper", "level", "method"];
pub const COVERAGE_HEADER: [&str; 4] = ["method", "level", "coverage", "mean_width"];
pub const SIMULATE_HEADER: [&str; 19] = [
    "m", "n", "r1", "r2", "alpha", "beta", "true_r", "R1", "MSE1", "R2", "MSE2", "R3", "MSE3", "R4",
    "MSE4", "stderr1", "stderr2", "stderr3", "stderr4",
];

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of a grid cell, derived from the global seed and the row contents
/// so that reordering rows does not change any cell's results.
pub fn cell_seed(seed: u64, row: &GridRow) -> u64 {
    [
        row.m as u64,
        row.n as u64,
        row.r1 as u64,
        row.r2 as u64,
        row.alpha.to_bits(),
        row.beta.to_bits(),
        row.replicates as u64,
    ]
    .into_iter()
    .fold(splitmix64(seed), |h, x| splitmix64(h ^ x))
}

fn load(data: &DataArgs) -> Result<StressStrengthData> {
    Ok(StressStrengthData::new(
        io::read_sample(&data.strength, data.n)?,
        io::read_sample(&data.stress, data.m)?,
    ))
}

fn simulate_row(row: &GridRow, res: Option<&SimCellResult>, f: NumberFormat) -> Vec<String> {
    let mut out = vec![
        row.m.to_string(),
        row.n.to_string(),
        row.r1.to_string(),
        row.r2.to_string(),
        f.fmt(row.alpha),
        f.fmt(row.beta),
    ];
    match res {
        Some(res) => {
            out.push(f.fmt(res.true_r));
            for (est, mse) in res.mean_estimates.to_array().into_iter().zip(res.mse) {
                out.push(f.fmt(est));
                out.push(f.fmt(mse));
            }
            out.extend(res.mc_stderr.iter().map(|&s| f.fmt(s)));
        }
        None => out.resize(SIMULATE_HEADER.len(), String::new()),
    }
    out
}

fn simulate(
    grid: &Path,
    seed: u64,
    out: Option<&Path>,
    threads: Option<usize>,
    priors: (GammaPrior, GammaPrior),
    f: NumberFormat,
) -> Result<()> {
    let rows = io::read_grid(grid)?;
    let configs: Vec<Option<SimCellConfig>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| match row.config() {
            Ok(c) => Some(c.with_seed(cell_seed(seed, row)).with_priors(priors.0, priors.1)),
            Err(e) => {
                eprintln!("{}: row {}: {e}", grid.display(), i + 2);
                None
            }
        })
        .collect();
    let valid: Vec<SimCellConfig> = configs.iter().flatten().copied().collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .context("cannot start worker threads")?;
    let mut results = pool.install(|| run_grid(&valid)).into_iter();

    let mut failures = 0usize;
    let mut table = Vec::with_capacity(rows.len());
    for (i, (row, config)) in rows.iter().zip(&configs).enumerate() {
        let res = match config {
            Some(_) => match results.next().expect("one result per valid cell") {
                Ok(res) => Some(res),
                Err(e) => {
                    eprintln!("{}: row {}: {e}", grid.display(), i + 2);
                    None
                }
            },
            None => None,
        };
        failures += res.is_none() as usize;
        table.push(simulate_row(row, res.as_ref(), f));
    }
    io::write_table(io::output(out)?, &SIMULATE_HEADER, &table)?;
    if failures > 0 {
        bail!("{failures} of {} grid cells failed", rows.len());
    }
    Ok(())
}

pub fn execute(manifest: &RunManifest) -> Result<()> {
    match manifest {
        RunManifest::Estimate {
            data,
            prior_strength,
            prior_stress,
            full_precision,
        } => {
            let f = NumberFormat::new(*full_precision);
            let est = estimate_all(&load(data)?, *prior_strength, *prior_stress)?;
            let row = est.to_array().map(|x| f.fmt(x)).to_vec();
            io::write_table(io::output(None)?, &ESTIMATE_HEADER, &[row])
        }
        RunManifest::Ci {
            data,
            methods,
            level,
            full_precision,
        } => {
            let f = NumberFormat::new(*full_precision);
            let d = load(data)?;
            let rows = methods
                .iter()
                .map(|&m| {
                    let ci = interval(&d, *level, m)?;
                    Ok(vec![f.fmt(ci.lower), f.fmt(ci.upper), f.fmt(ci.level), m.to_string()])
                })
                .collect::<Result<Vec<_>>>()?;
            io::write_table(io::output(None)?, &CI_HEADER, &rows)
        }
        RunManifest::Simulate {
            grid,
            seed,
            out,
            threads,
            prior_strength,
            prior_stress,
            full_precision,
        } => simulate(
            grid,
            *seed,
            out.as_deref(),
            *threads,
            (*prior_strength, *prior_stress),
            NumberFormat::new(*full_precision),
        ),
        RunManifest::Coverage {
            cell,
            replicates,
            level,
            methods,
            seed,
            out,
            full_precision,
        } => {
            let f = NumberFormat::new(*full_precision);
            let params = ExponentialScales::new(cell.alpha, cell.beta)?;
            let config = SimCellConfig::new(params, cell.n, cell.m, cell.r1, cell.r2)
                .with_replicates(*replicates)
                .with_seed(*seed)
                .with_level(*level);
            let rows = methods
                .iter()
                .map(|&m| {
                    let cov = run_coverage(&config, m)?;
                    Ok(vec![
                        m.to_string(),
                        f.fmt(*level),
                        f.fmt(cov.empirical_coverage),
                        f.fmt(cov.mean_width),
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            io::write_table(io::output(out.as_deref())?, &COVERAGE_HEADER, &rows)
        }
        RunManifest::Sample {
            cell,
            seed,
            replicate,
            strength_out,
            stress_out,
        } => {
            let params = ExponentialScales::new(cell.alpha, cell.beta)?;
            let d = draw_dataset(
                params,
                cell.n,
                cell.m,
                cell.r1,
                cell.r2,
                &RngStream::new(*seed, *replicate),
            )?;
            io::write_sample(strength_out, &d.strength)?;
            io::write_sample(stress_out, &d.stress)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> GridRow {
        GridRow {
            m: 10,
            n: 10,
            r1: 8,
            r2: 8,
            alpha: 2.0,
            beta: 3.0,
            replicates: 100,
        }
    }

    #[test]
    fn cell_seed_depends_on_seed_and_row() {
        let a = cell_seed(42, &row());
        assert_eq!(a, cell_seed(42, &row()));
        assert_ne!(a, cell_seed(43, &row()));
        let mut other = row();
        other.r1 = 7;
        assert_ne!(a, cell_seed(42, &other));
    }

    #[test]
    fn failed_cell_row_keeps_parameters() {
        let r = simulate_row(&row(), None, NumberFormat::default());
        assert_eq!(r.len(), SIMULATE_HEADER.len());
        assert_eq!(&r[..6], ["10", "10", "8", "8", "2", "3"]);
        assert!(r[6..].iter().all(String::is_empty));
    }
}
