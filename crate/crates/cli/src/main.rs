//! `mgiss` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parse error,
//! 3 target error, 4 enumeration budget exceeded.

mod bandit_cmd;
mod gen;
mod input;
mod mgiss_cmd;
mod reduce;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed")]
    Verification(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Target(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Target(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "mgiss",
    version,
    about = "Search-space reduction for conditional causal bandits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal superior intervention set of a target node.
    Mgiss(mgiss_cmd::MgissArgs),
    /// Cross-check C4 against the closure fixed point and the Λ-oracle.
    Verify(verify::VerifyArgs),
    /// Reduction fractions on random graphs or on a given graph.
    Reduce(reduce::ReduceArgs),
    /// Run the conditional bandit on a model file.
    Bandit(bandit_cmd::BanditArgs),
    /// Emit a random graph or a fixture model.
    Gen(gen::GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    pub fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Runs `f` on a pool of `jobs` threads, or the global pool when unset.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Input(format!("cannot start {n} threads: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mgiss(a) => mgiss_cmd::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Reduce(a) => reduce::run(a),
        Command::Bandit(a) => bandit_cmd::run(a),
        Command::Gen(a) => gen::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Verification(report) => println!("{report}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.code())
        }
    }
}
