//! Command-line front end for `mertens-core`: CSV reports with a `#` config
//! line and a `#` column header, numbers at 12 significant digits.

pub mod args;
pub mod commands;
pub mod format;

pub use args::Cli;
pub use commands::{execute, run, CliError};
