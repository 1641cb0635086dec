//! Command-line front end for `ssrel-core`.

pub mod args;
pub mod format;
pub mod io;
pub mod run;

pub use args::{parse_manifest, RunManifest, UsageError};
pub use run::execute;
