//! The `maillet` command-line tool.

pub mod args;
pub mod commands;
pub mod scan;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

pub use args::Cli;
pub use scan::{ScanConfig, ScanFormat, ScanRecord};

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Failure modes of a subcommand, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// A check failed or methods disagreed: exit 1.
    Failed(String),
}

impl From<maillet_core::Error> for CliError {
    fn from(e: maillet_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match commands::dispatch(cli.command, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
