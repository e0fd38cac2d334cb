//! Command-line front end: configuration parsing, command dispatch,
//! parameter sweeps and CSV/JSON output.

pub mod app;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod selftest;
pub mod species;
pub mod sweep;

pub use app::{main_with_args, run_args, Outcome};
pub use config::{parse_config, Command, RunConfig};
pub use error::CliError;
