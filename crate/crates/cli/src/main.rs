//! `qmoments` — build finite rank/crank statistic tables, verify the
//! generating-function identities behind them coefficient by coefficient,
//! and scan the crank-vs-rank moment inequality over parameter grids.
//!
//! Exit codes: 0 = success, 1 = a mathematical check failed, 2 = usage error.

mod cache;
mod cmd_scan;
mod cmd_table;
mod cmd_verify;
mod output;
mod ranges;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "qmoments",
    version,
    about = "Exact finite analogues of partition rank/crank moments: tables, identity checks, inequality scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and print a table or series
    Table(cmd_table::TableArgs),
    /// Check identities coefficient by coefficient
    Verify(cmd_verify::VerifyArgs),
    /// Scan the crank/rank moment inequality over a grid
    Scan(cmd_scan::ScanArgs),
}

pub enum CliError {
    Usage(String),
}

/// `Ok(true)` = everything passed, `Ok(false)` = a mathematical check failed.
pub type CliResult = Result<bool, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Table(args) => cmd_table::run(args),
        Command::Verify(args) => cmd_verify::run(args),
        Command::Scan(args) => cmd_scan::run(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
