//! One module per subcommand. Each writes into its own [`OutputDir`] and the
//! dispatcher always closes the directory with a manifest, so a failed run
//! still leaves a consistent listing of what it wrote.

mod derive;
mod figure2;
mod integrate;
mod scan;
mod spectrum;
mod verify;

use std::path::Path;

pub use verify::{run_suite, Check};

use sususy::beta_ode::{integrate, BetaSolution, InitialPoint, ParticularBeta, SolutionStatus};
use sususy::operators::{BetaProvider, LadderBeta};

use crate::config::{BetaSource, RunConfig};
use crate::error::CliError;
use crate::output::OutputDir;
use crate::Command;

pub fn dispatch(command: Command, cfg: &RunConfig, root: &Path) -> Result<(), CliError> {
    let mut out = OutputDir::prepare(root, command.name(), cfg)?;
    let result = match command {
        Command::Derive => derive::run(cfg, &mut out),
        Command::Integrate => integrate::run(cfg, &mut out),
        Command::Scan => scan::run(cfg, &mut out),
        Command::Spectrum => spectrum::run(cfg, &mut out),
        Command::Figure2 => figure2::run(cfg, &mut out),
        Command::Verify => verify::run(cfg, &mut out),
    };
    let manifest = out.finish(cfg);
    result?;
    manifest.map(|_| ())
}

/// Reads a `beta.csv` written by `integrate`, recording it as an input.
fn load_solution(path: &Path, out: &mut OutputDir) -> Result<BetaSolution, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read β source {}: {e}", path.display())))?;
    out.record_input(path, &text);
    Ok(BetaSolution::from_csv(&text)?)
}

fn require_regular(sol: &BetaSolution, what: &str) -> Result<(), CliError> {
    match sol.status() {
        SolutionStatus::Regular => Ok(()),
        SolutionStatus::Singular { x_sing, .. } => {
            Err(CliError::Numerical(format!("singular solution: {what} is singular at x = {x_sing}")))
        }
    }
}

/// The configured `β` source as a provider.
fn beta_provider(cfg: &RunConfig, out: &mut OutputDir) -> Result<Box<dyn BetaProvider>, CliError> {
    Ok(match &cfg.seed_source {
        BetaSource::Minus2x => Box::new(LadderBeta),
        BetaSource::Particular { lambda } => Box::new(ParticularBeta::new(*lambda)?),
        BetaSource::Csv(path) => {
            let sol = load_solution(path, out)?;
            require_regular(&sol, &format!("β from {}", path.display()))?;
            Box::new(sol)
        }
    })
}

/// The solution whose partner is analysed: the CSV source when given,
/// otherwise an integration from `(beta0, first dbeta0)`.
fn partner_solution(cfg: &RunConfig, out: &mut OutputDir) -> Result<BetaSolution, CliError> {
    let sol = match &cfg.seed_source {
        BetaSource::Csv(path) => load_solution(path, out)?,
        _ => integrate(InitialPoint::new(cfg.beta0, cfg.dbeta0_first()?), &cfg.scan)?,
    };
    let p = sol.initial();
    require_regular(&sol, &format!("the point ({}, {})", p.beta0, p.dbeta0))?;
    Ok(sol)
}
