use std::process::ExitCode;

use ssrel_cli::{execute, parse_manifest, UsageError};

fn main() -> ExitCode {
    let manifest = match parse_manifest(std::env::args_os()) {
        Ok(m) => m,
        Err(UsageError::Clap(e)) => e.exit(),
        Err(e) => {
            eprint!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match execute(&manifest) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
