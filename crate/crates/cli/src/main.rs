//! `pdm`: classical trajectories, quantum spectra and correspondence reports
//! for particles with position-dependent mass.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ConfigError;

#[derive(Debug, Parser)]
#[command(name = "pdm", version, about = "Position-dependent mass dynamics and spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a one-dimensional trajectory
    Simulate1d(commands::Simulate1dArgs),
    /// Integrate a planar trajectory in polar coordinates
    Simulate2d(commands::Simulate2dArgs),
    /// Lowest energy levels for an ordering scheme
    Spectrum(commands::SpectrumArgs),
    /// Classical-quantum correspondence report
    Classify(commands::ClassifyArgs),
    /// List mass profiles and ordering schemes
    Profiles,
}

/// 2 for bad input, 3 for numerical failure.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<ConfigError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<pdm_core::Error>() {
            return if e.is_numerical() { 3 } else { 2 };
        }
    }
    2
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("PDM_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate1d(a) => commands::simulate1d(a),
        Command::Simulate2d(a) => commands::simulate2d(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Classify(a) => commands::classify(a),
        Command::Profiles => commands::profiles(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
