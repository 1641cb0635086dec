//! Command-line parsing and manifest validation.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ssrel_core::{GammaPrior, IntervalMethod};

#[derive(Debug, Parser)]
#[command(name = "ssrel", version, about = "Stress-strength reliability for censored exponential data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Prior hyperparameters given as `u,v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorArg(pub f64, pub f64);

fn parse_prior(s: &str) -> Result<PriorArg, String> {
    let (u, v) = s
        .split_once(',')
        .ok_or_else(|| format!("'{s}' is not of the form u,v"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{}' is not a number", t.trim()))
    };
    Ok(PriorArg(num(u)?, num(v)?))
}

#[derive(Debug, Clone, Args, PartialEq)]
pub struct PriorArgs {
    /// Gamma prior (u,v) on the strength parameter; default non-informative 0,0
    #[arg(long, value_name = "U,V", value_parser = parse_prior, default_value = "0,0", allow_hyphen_values = true)]
    pub prior_strength: PriorArg,
    /// Gamma prior (u,v) on the stress parameter; default non-informative 0,0
    #[arg(long, value_name = "U,V", value_parser = parse_prior, default_value = "0,0", allow_hyphen_values = true)]
    pub prior_stress: PriorArg,
}

#[derive(Debug, Clone, Args, PartialEq)]
pub struct DataArgs {
    /// Headerless CSV of observed strength failure times
    #[arg(long)]
    pub strength: PathBuf,
    /// Headerless CSV of observed stress failure times
    #[arg(long)]
    pub stress: PathBuf,
    /// Units on test for strength
    #[arg(long)]
    pub n: usize,
    /// Units on test for stress
    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Exact,
    Asymptotic,
    Both,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<IntervalMethod> {
        match self {
            MethodChoice::Exact => vec![IntervalMethod::Exact],
            MethodChoice::Asymptotic => vec![IntervalMethod::Asymptotic],
            MethodChoice::Both => vec![IntervalMethod::Exact, IntervalMethod::Asymptotic],
        }
    }
}

#[derive(Debug, Clone, Args, PartialEq)]
pub struct CellArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r1: usize,
    #[arg(long)]
    pub r2: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the four point estimates of R
    Estimate {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        priors: PriorArgs,
        #[arg(long)]
        full_precision: bool,
    },
    /// Print confidence intervals for R
    Ci {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodChoice,
        #[arg(long, default_value_t = 0.95, allow_negative_numbers = true)]
        level: f64,
        #[arg(long)]
        full_precision: bool,
    },
    /// Run a Monte Carlo grid and write one CSV row per cell
    Simulate {
        /// CSV with header m,n,r1,r2,alpha,beta,replicates
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, env = "SSREL_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file; stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; all cores if omitted
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        priors: PriorArgs,
        #[arg(long)]
        full_precision: bool,
    },
    /// Estimate interval coverage for one configuration
    Coverage {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, default_value_t = ssrel_core::DEFAULT_REPLICATES)]
        replicates: usize,
        #[arg(long, default_value_t = 0.95, allow_negative_numbers = true)]
        level: f64,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodChoice,
        #[arg(long, env = "SSREL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        full_precision: bool,
    },
    /// Draw one simulated dataset and write it in the input format
    Sample {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, env = "SSREL_SEED", default_value_t = 0)]
        seed: u64,
        /// Replicate index within the seed
        #[arg(long, default_value_t = 0)]
        replicate: u64,
        #[arg(long)]
        strength_out: PathBuf,
        #[arg(long)]
        stress_out: PathBuf,
    },
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub enum RunManifest {
    Estimate {
        data: DataArgs,
        prior_strength: GammaPrior,
        prior_stress: GammaPrior,
        full_precision: bool,
    },
    Ci {
        data: DataArgs,
        methods: Vec<IntervalMethod>,
        level: f64,
        full_precision: bool,
    },
    Simulate {
        grid: PathBuf,
        seed: u64,
        out: Option<PathBuf>,
        threads: Option<usize>,
        prior_strength: GammaPrior,
        prior_stress: GammaPrior,
        full_precision: bool,
    },
    Coverage {
        cell: CellArgs,
        replicates: usize,
        level: f64,
        methods: Vec<IntervalMethod>,
        seed: u64,
        out: Option<PathBuf>,
        full_precision: bool,
    },
    Sample {
        cell: CellArgs,
        seed: u64,
        replicate: u64,
        strength_out: PathBuf,
        stress_out: PathBuf,
    },
}

impl RunManifest {
    pub fn command(&self) -> &'static str {
        match self {
            RunManifest::Estimate { .. } => "estimate",
            RunManifest::Ci { .. } => "ci",
            RunManifest::Simulate { .. } => "simulate",
            RunManifest::Coverage { .. } => "coverage",
            RunManifest::Sample { .. } => "sample",
        }
    }
}

#[derive(Debug)]
pub enum UsageError {
    /// Rejected by the argument parser, including `--help` and `--version`.
    Clap(clap::Error),
    /// Parsed, but violates one or more constraints.
    Invalid(Vec<String>),
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UsageError::Clap(e) => write!(f, "{e}"),
            UsageError::Invalid(problems) => {
                writeln!(f, "invalid arguments:")?;
                for p in problems {
                    writeln!(f, "  - {p}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for UsageError {}

fn check_level(level: f64, problems: &mut Vec<String>) {
    if !(level > 0.0 && level < 1.0) {
        problems.push(format!("--level {level} must lie strictly between 0 and 1"));
    }
}

fn check_prior(flag: &str, p: PriorArg, problems: &mut Vec<String>) -> GammaPrior {
    GammaPrior::new(p.0, p.1).unwrap_or_else(|e| {
        problems.push(format!("--{flag} {},{}: {e}", p.0, p.1));
        GammaPrior::non_informative()
    })
}

fn check_positive(flag: &str, x: usize, problems: &mut Vec<String>) {
    if x == 0 {
        problems.push(format!("--{flag} must be at least 1"));
    }
}

fn check_cell(cell: &CellArgs, problems: &mut Vec<String>) {
    for (flag, x) in [("alpha", cell.alpha), ("beta", cell.beta)] {
        if !(x > 0.0 && x.is_finite()) {
            problems.push(format!("--{flag} {x} must be finite and > 0"));
        }
    }
    check_positive("n", cell.n, problems);
    check_positive("m", cell.m, problems);
    check_positive("r1", cell.r1, problems);
    check_positive("r2", cell.r2, problems);
    if cell.r1 > cell.n {
        problems.push(format!("--r1 {} exceeds --n {}", cell.r1, cell.n));
    }
    if cell.r2 > cell.m {
        problems.push(format!("--r2 {} exceeds --m {}", cell.r2, cell.m));
    }
}

/// Parses and validates `argv` (including the program name).
pub fn parse_manifest<I, T>(argv: I) -> Result<RunManifest, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(UsageError::Clap)?;
    let mut problems = Vec::new();
    let manifest = match cli.command {
        Command::Estimate {
            data,
            priors,
            full_precision,
        } => {
            check_positive("n", data.n, &mut problems);
            check_positive("m", data.m, &mut problems);
            RunManifest::Estimate {
                data,
                prior_strength: check_prior("prior-strength", priors.prior_strength, &mut problems),
                prior_stress: check_prior("prior-stress", priors.prior_stress, &mut problems),
                full_precision,
            }
        }
        Command::Ci {
            data,
            method,
            level,
            full_precision,
        } => {
            check_positive("n", data.n, &mut problems);
            check_positive("m", data.m, &mut problems);
            check_level(level, &mut problems);
            RunManifest::Ci {
                data,
                methods: method.methods(),
                level,
                full_precision,
            }
        }
        Command::Simulate {
            grid,
            seed,
            out,
            threads,
            priors,
            full_precision,
        } => {
            if threads == Some(0) {
                problems.push("--threads must be at least 1".to_string());
            }
            RunManifest::Simulate {
                grid,
                seed,
                out,
                threads,
                prior_strength: check_prior("prior-strength", priors.prior_strength, &mut problems),
                prior_stress: check_prior("prior-stress", priors.prior_stress, &mut problems),
                full_precision,
            }
        }
        Command::Coverage {
            cell,
            replicates,
            level,
            method,
            seed,
            out,
            full_precision,
        } => {
            check_cell(&cell, &mut problems);
            check_positive("replicates", replicates, &mut problems);
            check_level(level, &mut problems);
            RunManifest::Coverage {
                cell,
                replicates,
                level,
                methods: method.methods(),
                seed,
                out,
                full_precision,
            }
        }
        Command::Sample {
            cell,
            seed,
            replicate,
            strength_out,
            stress_out,
        } => {
            check_cell(&cell, &mut problems);
            RunManifest::Sample {
                cell,
                seed,
                replicate,
                strength_out,
                stress_out,
            }
        }
    };
    if problems.is_empty() {
        Ok(manifest)
    } else {
        Err(UsageError::Invalid(problems))
    }
}
