//! Command-line front end for the kicked-top correlation experiments.

mod config;
mod runner;

use clap::{Parser, Subcommand};

use crate::config::RunArgs;

/// Quantum kicked-top simulator: two-qubit discord, concurrence, and entropy
/// dynamics, plus the classical stroboscopic map.
#[derive(Parser)]
#[command(name = "kicked-top", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical stroboscopic point cloud over a lattice of initial
    /// conditions.
    ClassicalMap(RunArgs),
    /// Correlation measures after every kick from one coherent state.
    TimeSeries(RunArgs),
    /// Time-averaged discord over a lattice of initial coherent states.
    AvgMap(RunArgs),
    /// Time-averaged discord along a fixed-θ slice of initial conditions.
    PhiSlice(RunArgs),
    /// Time series plus discord/entropy and discord/concurrence
    /// correlations.
    Compare(RunArgs),
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Usage errors are configuration errors under the exit-code contract
    // (clap's own default would be status 2, which is reserved for numeric
    // contract violations).
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            std::process::exit(1);
        }
        Err(e) => {
            print!("{e}");
            std::process::exit(0);
        }
    };
    let (command, args) = match &cli.command {
        Command::ClassicalMap(args) => ("classical-map", args),
        Command::TimeSeries(args) => ("time-series", args),
        Command::AvgMap(args) => ("avg-map", args),
        Command::PhiSlice(args) => ("phi-slice", args),
        Command::Compare(args) => ("compare", args),
    };
    if let Err(e) = runner::run(command, args) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
