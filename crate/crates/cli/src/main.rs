mod commands;
mod config;

use abnrl::error::{Error, Result};
use clap::{Parser, Subcommand};
use config::Opts;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "abnrl", version, about = "Aharonov-Bohm Dirac and Schrödinger operators: checks and limit tables")]
struct Cli {
    /// JSON file with default parameters; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound state (Schrödinger) or gap eigenvalue (Dirac).
    Eig(Opts),
    /// Scattering lengths of both families along the coupling schedule.
    Scatlen(Opts),
    /// Resolvent prefactor difference over the c sweep.
    TauLimit(Opts),
    /// Rank-one kernel difference over the c sweep.
    KernelLimit(Opts),
    /// Resolvent-difference operator norm over the c sweep.
    NormLimit(Opts),
    /// Eigenvalue difference over the c sweep.
    EigLimit(Opts),
    /// Positron-side prefactor difference over the c sweep.
    PositronLimit(Opts),
    /// Resolvent residuals on the default grid and its refinement.
    ResolventCheck(Opts),
    /// Partial-wave invariants on a Gaussian ring.
    PwRoundtrip(Opts),
    /// Square boundary map and double-application residual.
    SquareCheck(Opts),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::MissingEigenvalue { .. } => 3,
        Error::Pole(_) | Error::EigenvalueCollision { .. } | Error::NonConvergence(_) => 4,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn dispatch(cmd: Command, config: Option<PathBuf>) -> Result<(commands::Table, Option<PathBuf>)> {
    use commands::*;
    let (f, opts): (fn(&Opts) -> Result<Table>, Opts) = match cmd {
        Command::Eig(o) => (eig, o),
        Command::Scatlen(o) => (scatlen, o),
        Command::TauLimit(o) => (tau_limit_cmd, o),
        Command::KernelLimit(o) => (kernel_limit, o),
        Command::NormLimit(o) => (norm_limit, o),
        Command::EigLimit(o) => (eig_limit, o),
        Command::PositronLimit(o) => (positron_limit, o),
        Command::ResolventCheck(o) => (resolvent_check, o),
        Command::PwRoundtrip(o) => (pw_roundtrip, o),
        Command::SquareCheck(o) => (square_check, o),
    };
    let opts = match config {
        Some(path) => opts.over(Opts::load(&path)?),
        None => opts,
    };
    Ok((f(&opts)?, opts.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(cli.command, cli.config).and_then(|(table, out)| {
        let csv = table.to_csv()?;
        match out {
            Some(path) => {
                std::fs::write(&path, csv)?;
                println!("{}", table.summary);
            }
            None => {
                std::io::stdout().write_all(&csv)?;
                eprintln!("{}", table.summary);
            }
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
