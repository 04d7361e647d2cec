//! File formats, reports and command execution for the `clusterlab` binary.

pub mod args;
pub mod commands;
pub mod formats;
pub mod report;

pub use args::Cli;
pub use commands::{run, CliError, Output};
