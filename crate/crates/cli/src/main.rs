//! `creepwave`: creeping-wave asymptotics and exact partial waves for a
//! sound-soft sphere, from the command line.
//!
//! Exit status: 0 success, 2 configuration error, 3 numerical failure,
//! 4 comparison or self-test failure.

mod commands;
mod config;
mod error;
mod svg;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Command;
use crate::error::CliError;

#[derive(Parser)]
#[command(name = "creepwave", version, about = "Creeping waves on a sound-soft sphere")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Table of creeping modes: q_i, beta_i, lambda_i, mu_i, C_i.
    Modes,
    /// Creeping-wave scattering amplitude over a theta grid.
    Amplitude,
    /// Exact backscatter vs asymptotics over a k grid, with the interference-period check.
    Compare,
    /// Diffracted-ray export and SVG.
    Raytrace,
    /// Quick internal consistency checks.
    Selftest,
}

/// Every flag may also be given as `key = value` in the file passed to `--config`.
#[derive(Args)]
struct Opts {
    /// Flat key = value configuration file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long = "k-min", global = true, allow_hyphen_values = true)]
    k_min: Option<String>,
    #[arg(long = "k-max", global = true, allow_hyphen_values = true)]
    k_max: Option<String>,
    #[arg(long = "k-steps", global = true)]
    k_steps: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    radius: Option<String>,
    /// Scattering angle for raytrace (radians).
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long = "theta-min", global = true, allow_hyphen_values = true)]
    theta_min: Option<String>,
    #[arg(long = "theta-max", global = true, allow_hyphen_values = true)]
    theta_max: Option<String>,
    #[arg(long = "theta-steps", global = true)]
    theta_steps: Option<String>,
    #[arg(long, global = true)]
    modes: Option<String>,
    #[arg(long, global = true)]
    tours: Option<String>,
    /// +, - or both (raytrace).
    #[arg(long, global = true, allow_hyphen_values = true)]
    sense: Option<String>,
    /// legendre, resummed or tours (amplitude).
    #[arg(long, global = true)]
    form: Option<String>,
    #[arg(long, global = true)]
    boundary: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    calibration: Option<String>,
    /// Fit the calibration against the exact backscatter (compare).
    #[arg(long = "fit-calibration", global = true)]
    fit_calibration: Option<String>,
    /// Relative tolerance of the interference-period check (compare).
    #[arg(long = "period-tol", global = true)]
    period_tol: Option<String>,
    #[arg(long, global = true)]
    lmax: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Output path; `.json` selects JSON, anything else CSV. Default stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true)]
    svg: Option<String>,
    /// Worker threads; falls back to CREEPWAVE_WORKERS, then all cores.
    #[arg(long, global = true)]
    workers: Option<String>,
}

impl Opts {
    fn overrides(&self) -> Vec<(String, String)> {
        let pairs: [(&str, &Option<String>); 21] = [
            ("k", &self.k),
            ("k-min", &self.k_min),
            ("k-max", &self.k_max),
            ("k-steps", &self.k_steps),
            ("radius", &self.radius),
            ("theta", &self.theta),
            ("theta-min", &self.theta_min),
            ("theta-max", &self.theta_max),
            ("theta-steps", &self.theta_steps),
            ("modes", &self.modes),
            ("tours", &self.tours),
            ("sense", &self.sense),
            ("form", &self.form),
            ("boundary", &self.boundary),
            ("calibration", &self.calibration),
            ("fit-calibration", &self.fit_calibration),
            ("period-tol", &self.period_tol),
            ("lmax", &self.lmax),
            ("seed", &self.seed),
            ("out", &self.out),
            ("svg", &self.svg),
        ];
        pairs.iter().filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))).collect()
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let command = match cli.command {
        Cmd::Modes => Command::Modes,
        Cmd::Amplitude => Command::Amplitude,
        Cmd::Compare => Command::Compare,
        Cmd::Raytrace => Command::Raytrace,
        Cmd::Selftest => Command::Selftest,
    };
    let file = match &cli.opts.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            config::parse_file(&text, p)?
        }
        None => Vec::new(),
    };
    let env = std::env::var("CREEPWAVE_WORKERS").ok();
    let workers = config::workers(cli.opts.workers.as_deref(), env.as_deref())?;
    let cfg = config::resolve(command, file, cli.opts.overrides(), workers)?;
    let report = match command {
        Command::Modes => commands::run_modes(&cfg)?,
        Command::Amplitude => commands::run_amplitude(&cfg)?,
        Command::Compare => commands::run_compare(&cfg)?,
        Command::Raytrace => commands::run_raytrace(&cfg)?,
        Command::Selftest => commands::run_selftest(&cfg)?,
    };
    if let Some(t) = &report.table {
        t.write(cfg.out.as_deref())?;
    }
    for line in &report.summary {
        eprintln!("{line}");
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap reports usage errors with status 2 itself
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("creepwave: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
