use sususy::beta_ode::{initial_curve, integrate, InitialPoint, SolutionStatus};
use sususy::interp::uniform_grid;
use sususy::io::{fmt_f64, CsvDoc};
use sususy::spectral::{abraham_moses, PartnerPotential, Potential};
use sususy::VERSION;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::OutputDir;
use crate::plots::figure2_script;

const GRID_POINTS: usize = 601;

pub fn run(cfg: &RunConfig, out: &mut OutputDir) -> Result<(), CliError> {
    if cfg.dbeta0.is_empty() {
        return Err(CliError::Usage("figure2 needs at least one dbeta0 value".into()));
    }
    let x_max = cfg.scan.x_max;
    let grid = uniform_grid(-x_max, x_max, GRID_POINTS);
    let curve = initial_curve(cfg.beta0).ok();

    let mut columns: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut skipped = Vec::new();
    let mut notes = Vec::new();
    for &d in &cfg.dbeta0 {
        let sol = integrate(InitialPoint::new(cfg.beta0, d), &cfg.scan)?;
        if let SolutionStatus::Singular { x_sing, .. } = *sol.status() {
            eprintln!("skipping β'(0) = {d}: singular at x = {x_sing}");
            skipped.push(format!("{d} (singular at x = {x_sing})"));
            continue;
        }
        let pot = PartnerPotential::new(sol)?;
        let values: Vec<f64> = grid.iter().map(|&x| pot.value(x)).collect();
        if curve.is_some_and(|c| (c - d).abs() <= 1e-12) {
            // On the curve the partner is the Abraham–Moses potential with
            // β(0) = -1/λ.
            let lambda = -1.0 / cfg.beta0;
            let mut dev = 0.0f64;
            for (x, v) in grid.iter().zip(&values) {
                dev = dev.max((v - abraham_moses(lambda, *x)?).abs());
            }
            let note = format!("dbeta0 = {d} is on the curve: max |V~+4 - V_lambda| = {dev:e} with lambda = {lambda}");
            println!("{note}");
            notes.push(note);
        }
        columns.push((d, values));
    }

    let mut names = vec!["x".to_string()];
    names.extend(columns.iter().map(|(d, _)| format!("dbeta0={d}")));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut doc = CsvDoc::new(&refs)
        .with_meta("tool", format!("sususy {VERSION}"))
        .with_meta("fingerprint", out.fingerprint().to_string())
        .with_meta("beta0", fmt_f64(cfg.beta0))
        .with_meta("quantity", "Vtilde + 4 = x^2 + 2 beta' + 4");
    for n in &notes {
        doc.push_meta("note", n.clone());
    }
    for s in &skipped {
        doc.push_meta("skipped", s.clone());
    }
    for (i, &x) in grid.iter().enumerate() {
        let mut row = vec![fmt_f64(x)];
        row.extend(columns.iter().map(|(_, v)| fmt_f64(v[i])));
        doc.push_row(row);
    }
    out.write_csv("figure2.csv", &doc.render())?;
    out.write_text("figure2.gp", &figure2_script(cfg.beta0, columns.len()))?;
    println!("{} curves written at β(0) = {}", columns.len(), cfg.beta0);

    if skipped.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("singular β'(0) values skipped: {}", skipped.join(", "))))
    }
}
