use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use qwsearch_cli::{run, Cli, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK as u8),
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    match run(cli.command) {
        Ok((report, out)) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if out.is_none() {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(report.csv.as_bytes()).is_err() {
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
            if report.passed {
                ExitCode::from(EXIT_OK as u8)
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
