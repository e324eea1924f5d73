//! Command-line front end for `qwsearch`: every subcommand turns a
//! [`RunConfig`] into CSV text.

pub mod commands;
pub mod config;
pub mod error;

use std::fs;

pub use commands::{
    cmd_overlaps, cmd_runtimes, cmd_simulate, cmd_sweep_gamma, cmd_verify_spin, Report,
};
pub use config::{Cli, Command, RunConfig};
pub use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

type Handler = fn(&RunConfig) -> Result<Report, CliError>;

/// Runs one subcommand, writing its CSV to `--out` or returning it for stdout.
pub fn run(command: Command) -> Result<(Report, Option<std::path::PathBuf>), CliError> {
    let (cfg, f): (RunConfig, Handler) = match command {
        Command::Simulate(c) => (c, cmd_simulate),
        Command::SweepGamma(c) => (c, cmd_sweep_gamma),
        Command::Overlaps(c) => (c, cmd_overlaps),
        Command::Runtimes(c) => (c, cmd_runtimes),
        Command::VerifySpin(c) => (c, cmd_verify_spin),
    };
    let cfg = cfg.resolve()?;
    let report = f(&cfg)?;
    if let Some(path) = &cfg.out {
        fs::write(path, &report.csv)?;
    }
    Ok((report, cfg.out))
}
