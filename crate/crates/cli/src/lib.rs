//! Command-line front end: configuration loading, subcommands and file
//! output for the `sususy` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod plots;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "sususy", version, about = "Second-order SUSY partners of the harmonic oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Write V, Ṽ, γ for a β source plus constraint and operator residuals.
    Derive,
    /// Integrate the β-equation from (beta0, first dbeta0).
    Integrate,
    /// Classify the initial-condition plane and bisect thresholds.
    Scan,
    /// Compare low-lying spectra of Ṽ+4 and V_λ with the oscillator.
    Spectrum,
    /// Gallery of Ṽ+4 at fixed beta0 for a list of dbeta0 values.
    Figure2,
    /// Run the full residual and isospectrality suite.
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Derive => "derive",
            Command::Integrate => "integrate",
            Command::Scan => "scan",
            Command::Spectrum => "spectrum",
            Command::Figure2 => "figure2",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Args, Default)]
pub struct GlobalOpts {
    /// Flat `key = value` config file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output root; each command writes into `<out>/<command>/`.
    #[arg(long, global = true, env = "SUSUSY_OUT_DIR", default_value = "out")]
    pub out: PathBuf,

    /// minus2x | eq17:lambda=V | csv:PATH
    #[arg(long = "seed-source", global = true)]
    pub seed_source: Option<String>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta0: Option<String>,

    /// One value or a comma-separated list.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub dbeta0: Option<String>,

    #[arg(long, global = true)]
    pub kmax: Option<String>,

    /// Scan grid as `N_BETAxN_DBETA`.
    #[arg(long, global = true)]
    pub grid: Option<String>,

    /// Scan window as `beta_min,beta_max,dbeta_min,dbeta_max`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,

    /// Worker threads for scans (0: one per CPU).
    #[arg(long, global = true)]
    pub jobs: Option<String>,
}

impl GlobalOpts {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let flags = [
            ("seed_source", &self.seed_source),
            ("lambda", &self.lambda),
            ("beta0", &self.beta0),
            ("dbeta0", &self.dbeta0),
            ("kmax", &self.kmax),
            ("grid", &self.grid),
            ("window", &self.window),
            ("jobs", &self.jobs),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                let flag = key.replace('_', "-");
                cfg.set(key, v).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.opts.resolve()?;
    commands::dispatch(cli.command, &cfg, &cli.opts.out)
}
