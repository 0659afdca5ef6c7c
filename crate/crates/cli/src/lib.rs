//! Command-line front end: evaluations, sweeps, simulations, optimizations
//! and the reference reproduction run.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod repro;

pub use config::Params;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }
}

impl From<coldstandby::Error> for CliError {
    fn from(e: coldstandby::Error) -> Self {
        match e {
            coldstandby::Error::NoSignChange { .. } => CliError::Infeasible(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "coldstandby",
    version,
    about = "Availability and profit of a cold-standby system with regular and expert repair"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the selected models at one parameter point.
    Eval(Params),
    /// Tabulate every selected model over a grid of patience times (CSV).
    Sweep(Params),
    /// Monte Carlo estimates with standard errors.
    Simulate(Params),
    /// Optimize the patience time or locate crossings and thresholds.
    Optimize(Params),
    /// Run the reference parameter set end to end and report PASS/FAIL per check.
    ReproPaper(Params),
}

/// Parses `args` and runs the command, writing the report to `out`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Eval(p) => commands::eval(&p.resolve()?, out),
        Command::Sweep(p) => commands::sweep(&p.resolve()?, out),
        Command::Simulate(p) => commands::simulate(&p.resolve()?, out),
        Command::Optimize(p) => commands::optimize(&p.resolve()?, out),
        Command::ReproPaper(p) => repro::run(&p.resolve()?, out),
    }
}
