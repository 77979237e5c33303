use sususy::beta_ode::{integrate, equation_residual, InitialPoint, SolutionStatus};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::OutputDir;

pub fn run(cfg: &RunConfig, out: &mut OutputDir) -> Result<(), CliError> {
    let p = InitialPoint::new(cfg.beta0, cfg.dbeta0_first()?);
    let sol = integrate(p, &cfg.scan)?;
    out.write_csv("beta.csv", &sol.to_csv())?;
    let (lo, hi) = sol.span();
    println!("initial point ({}, {}): {} samples on [{lo}, {hi}]", p.beta0, p.dbeta0, sol.samples().len());
    match sol.status() {
        SolutionStatus::Regular => {
            println!("status regular; equation residual {:.3e}; tail |β' + 2| {:.3e}", equation_residual(&sol)?, sol.tail_mismatch());
        }
        SolutionStatus::Singular { x_sing, side } => {
            println!("status singular at x = {x_sing} ({side:?} sweep)");
        }
    }
    Ok(())
}
