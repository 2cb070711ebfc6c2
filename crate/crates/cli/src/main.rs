//! Command-line front end: spectra, sweeps, states, Landau levels and the
//! verification suite. Exit status 0 on success, 1 when a computation or
//! check fails, 2 on malformed input.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use diracwell::Potential1D;

use crate::config::{Command, Format, Method, ParamValue, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "diracwell", version, about = "Bound states of Dirac quasiparticles in one-dimensional fields")]
struct Cli {
    /// JSON run configuration naming the command and its parameters; used
    /// instead of a subcommand.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Bound-state energies at fixed k.
    Spectrum(Flags),
    /// Branches eps(k) of the square well at fixed depth (--k lo:hi:step).
    SweepK(Flags),
    /// Branches eps(v0) at fixed k (--v0 lo:hi:step), with collapse records.
    SweepV0(Flags),
    /// Normalized eigenfunction, densities and currents of one level.
    State(Flags),
    /// Landau levels of a uniform magnetic field, optionally with V = alpha A.
    Landau(Flags),
    /// Invariant and cross-method checks, one line each.
    Verify(Flags),
}

#[derive(Debug, clap::Args)]
struct Flags {
    /// Momentum along y, or a lo:hi:step range for sweep-k.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<ParamValue>,
    /// Square-well depth, or a lo:hi:step range for sweep-v0.
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<ParamValue>,
    /// Half-width of the square well.
    #[arg(long = "half-width", short = 'L', default_value_t = 1.0)]
    half_width: f64,
    /// Electric potential as inline JSON or a path to a JSON file.
    #[arg(long, value_parser = parse_potential)]
    potential: Option<Potential1D>,
    /// Proportionality constant of V = alpha A.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Uniform magnetic field strength (A = beta x).
    #[arg(long)]
    beta: Option<f64>,
    /// Level index for state; highest level for landau and verify.
    #[arg(long)]
    level: Option<usize>,
    /// Root-finding route for spectrum.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn parse_potential(s: &str) -> Result<Potential1D, String> {
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).map_err(|e| format!("cannot read {s}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

impl Flags {
    fn into_config(self, command: Command) -> RunConfig {
        RunConfig {
            command,
            potential: self.potential,
            k: self.k,
            v0: self.v0,
            half_width: self.half_width,
            alpha: self.alpha,
            beta: self.beta,
            level: self.level,
            method: self.method,
            output: self.output,
            format: self.format,
        }
    }
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    match (cli.config, cli.command) {
        (Some(path), None) => RunConfig::from_json_file(&path),
        (None, Some(sub)) => Ok(match sub {
            Sub::Spectrum(f) => f.into_config(Command::Spectrum),
            Sub::SweepK(f) => f.into_config(Command::SweepK),
            Sub::SweepV0(f) => f.into_config(Command::SweepV0),
            Sub::State(f) => f.into_config(Command::State),
            Sub::Landau(f) => f.into_config(Command::Landau),
            Sub::Verify(f) => f.into_config(Command::Verify),
        }),
        _ => Err(CliError::Config("give a subcommand or --config FILE".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match resolve(cli).and_then(|config| commands::run(&config)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("diracwell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
