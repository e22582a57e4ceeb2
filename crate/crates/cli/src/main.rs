mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use reluctant_walk::experiments::random_seed;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or_else(|| {
        let s = random_seed();
        eprintln!("seed: {s}");
        s
    });
    let outcome = match &cli.command {
        Command::Pmf(a) => commands::pmf(a, seed),
        Command::Simulate(a) => commands::simulate(a, seed),
        Command::Likelihood(a) => commands::likelihood(a, seed),
        Command::Estimate(a) => commands::estimate(a, seed),
        Command::LevelSet(a) => commands::level_set(a, seed),
        Command::Diffusion(a) => commands::diffusion(a, seed),
        Command::Databox(a) => commands::databox(a, seed),
        Command::Figures(a) => commands::figures(a, seed),
        Command::Validate(a) => commands::validate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
