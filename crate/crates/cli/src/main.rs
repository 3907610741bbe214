//! `displace`: command-line access to the displacement oracles.

mod commands;
mod exit;
mod input;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::exit::{status_of, Status};

#[derive(Debug, Parser)]
#[command(name = "displace", version, about = "Coalition displacement oracles for Top-k positional elections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Largest number of honest winners a coalition of m voters can displace.
    MaxDisplacement(commands::solve::MaxDisplacementArgs),
    /// Feasible cutoff interval at one level, or at every level as CSV.
    Envelope(commands::solve::EnvelopeArgs),
    /// Integer points of a replicated ladder's envelope, tagged by membership.
    Lattice(commands::lattice::LatticeArgs),
    /// Compare the oracle against exhaustive search on random small instances.
    BruteCheck(commands::experiments::BruteCheckArgs),
    /// Sample a Mallows profile in PrefLib SOC format.
    GenMallows(commands::generate::GenMallowsArgs),
    /// Sample a synthetic score file.
    GenScores(commands::generate::GenScoresArgs),
    /// Time the oracle on synthetic instances.
    Bench(commands::experiments::BenchArgs),
    /// Oracle versus the greedy heuristic on Mallows profiles.
    BaselineCompare(commands::experiments::BaselineCompareArgs),
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("DISPLACE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("DISPLACE_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("DISPLACE_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok,
                _ => Status::Usage,
            };
            let _ = e.print();
            return status.into();
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return Status::Usage.into();
    }
    let result = match cli.command {
        Command::MaxDisplacement(a) => commands::solve::max_displacement(&a),
        Command::Envelope(a) => commands::solve::envelope(&a),
        Command::Lattice(a) => commands::lattice::run(&a),
        Command::BruteCheck(a) => commands::experiments::brute_check(&a),
        Command::GenMallows(a) => commands::generate::gen_mallows(&a),
        Command::GenScores(a) => commands::generate::gen_scores(&a),
        Command::Bench(a) => commands::experiments::bench(&a),
        Command::BaselineCompare(a) => commands::experiments::baseline_compare(&a),
    };
    match result {
        Ok(()) => Status::Ok.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            status_of(&e).into()
        }
    }
}
