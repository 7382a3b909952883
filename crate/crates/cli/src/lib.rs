//! Command-line front end: resolves a [`RunConfig`], runs one command, and
//! renders the report as text or JSON.

pub mod config;
pub mod rational;
mod report;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

pub use config::{Command, Fields, Format, RunConfig};
pub use rational::{parse_rational, ParseRationalError};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] stw_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

/// What a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one resolved configuration. `Ok` carries the report even when one of
/// its checks failed; see [`Report::passed`].
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    report::build(config)
}

/// Parses `args` (including the program name), runs, and renders.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match config::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                Outcome { exit_code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let (command, path, flags) = cli.command.into_parts();
    let result = path
        .map(|p| Fields::from_file(&p))
        .transpose()
        .and_then(|file| RunConfig::resolve(command, file, flags))
        .and_then(|config| run(&config).map(|report| (config, report)));
    match result {
        Ok((config, report)) => {
            let stdout = match config.format {
                Format::Json => report.json_string(),
                Format::Text => report.text.clone(),
            };
            let (exit_code, stderr) =
                if report.passed { (0, String::new()) } else { (1, format!("stw {command}: check failed\n")) };
            Outcome { exit_code, stdout, stderr }
        }
        Err(e) => Outcome { exit_code: e.exit_code(), stdout: String::new(), stderr: format!("stw {command}: {e}\n") },
    }
}
