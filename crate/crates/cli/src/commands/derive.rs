use serde_json::{json, Value};
use sususy::interp::uniform_grid;
use sususy::io::{fmt_f64, CsvDoc};
use sususy::operators::{
    constraint_residuals, factorization_residual, intertwining_residual, BetaKind, PotentialTriple,
    ShiftConstants, TestFunction,
};
use sususy::spectral::abraham_moses;
use sususy::{Error, VERSION};

use super::beta_provider;
use crate::config::{BetaSource, RunConfig};
use crate::error::CliError;
use crate::output::OutputDir;

/// Window of the operator residual checks, clipped to the provider domain.
const OPERATOR_WINDOW: (f64, f64) = (-8.0, 8.0);

pub fn run(cfg: &RunConfig, out: &mut OutputDir) -> Result<(), CliError> {
    let beta = beta_provider(cfg, out)?;
    let k = ShiftConstants::OSCILLATOR;
    let grid = uniform_grid(cfg.derive_window.0, cfg.derive_window.1, cfg.derive_points);

    // Closed forms for analytic β; the division-free oscillator form for
    // interpolated β or when a grid point hits a zero of β.
    let (triple, method) = match beta.kind() {
        BetaKind::ClosedForm => match PotentialTriple::from_beta(beta.as_ref(), k, &grid) {
            Ok(t) => (t, "closed-form"),
            Err(Error::BetaFloor { .. }) => (PotentialTriple::oscillator(beta.as_ref(), &grid)?, "oscillator-regularized"),
            Err(e) => return Err(e.into()),
        },
        BetaKind::Interpolated => (PotentialTriple::oscillator(beta.as_ref(), &grid)?, "oscillator-regularized"),
    };

    let mut doc = CsvDoc::new(&["x", "V", "Vtilde", "gamma", "Vtilde_plus4"])
        .with_meta("tool", format!("sususy {VERSION}"))
        .with_meta("fingerprint", out.fingerprint().to_string())
        .with_meta("source", cfg.seed_source.to_string())
        .with_meta("method", method)
        .with_meta("constants", format!("c={} delta={}", k.c, k.delta));
    for i in 0..triple.len() {
        doc.push_row(vec![
            fmt_f64(triple.grid[i]),
            fmt_f64(triple.v[i]),
            fmt_f64(triple.vtilde[i]),
            fmt_f64(triple.gamma[i]),
            fmt_f64(triple.vtilde[i] + 4.0),
        ]);
    }
    out.write_csv("potentials.csv", &doc.render())?;

    let constraints = constraint_residuals(&triple, beta.as_ref(), k)?;
    let (lo, hi) = beta.domain();
    let window = (OPERATOR_WINDOW.0.max(lo), OPERATOR_WINDOW.1.min(hi));
    let op_grid = uniform_grid(window.0, window.1, cfg.operator_n);
    let op_triple = PotentialTriple::oscillator(beta.as_ref(), &op_grid)?;
    let mut probes = vec![TestFunction::gaussian()];
    probes.extend(TestFunction::corpus());
    let mut operator_rows = Vec::new();
    let mut worst_intertwining = 0.0f64;
    let mut worst_factorization = 0.0f64;
    for psi in &probes {
        let i = intertwining_residual(&op_triple, beta.as_ref(), psi, window, cfg.operator_n)?;
        let f = factorization_residual(&op_triple, beta.as_ref(), k, psi, window, cfg.operator_n)?;
        if i.reliable {
            worst_intertwining = worst_intertwining.max(i.value);
        }
        if f.reliable {
            worst_factorization = worst_factorization.max(f.value);
        }
        operator_rows.push(json!({
            "function": psi.label(),
            "intertwining": i.value,
            "factorization": f.value,
            "reliable": i.reliable && f.reliable,
        }));
    }

    let mut report = json!({
        "tool": format!("sususy {VERSION}"),
        "fingerprint": out.fingerprint(),
        "source": cfg.seed_source.to_string(),
        "method": method,
        "grid": { "a": grid[0], "b": grid[grid.len() - 1], "points": grid.len() },
        "constraints": {
            "partner_shift": constraints.partner_shift,
            "gamma_relation": constraints.gamma_relation,
            "potential_ode": constraints.potential_ode,
        },
        "operator_window": { "a": window.0, "b": window.1, "points": cfg.operator_n },
        "operators": operator_rows,
        "max_reliable_intertwining": worst_intertwining,
        "max_reliable_factorization": worst_factorization,
    });
    println!("source {} ({method}), {} points on [{}, {}]", cfg.seed_source, grid.len(), grid[0], grid[grid.len() - 1]);
    println!("constraint residuals: shift {:.3e}, gamma {:.3e}, V-equation {:.3e}",
        constraints.partner_shift, constraints.gamma_relation, constraints.potential_ode);
    println!("operator residuals on [{}, {}]: intertwining ≤ {worst_intertwining:.3e}, factorization ≤ {worst_factorization:.3e}",
        window.0, window.1);

    match &cfg.seed_source {
        BetaSource::Minus2x => {
            let dev = (0..triple.len()).map(|i| (triple.vtilde[i] - (triple.v[i] - 4.0)).abs()).fold(0.0, f64::max);
            println!("max |Ṽ - (V - 4)| = {dev:.3e}");
            report["max_abs_vtilde_minus_v_plus4"] = Value::from(dev);
        }
        BetaSource::Particular { lambda } => {
            let mut dev = 0.0f64;
            for i in 0..triple.len() {
                dev = dev.max((triple.vtilde[i] + 4.0 - abraham_moses(*lambda, triple.grid[i])?).abs());
            }
            println!("max |Ṽ + 4 - V_λ| = {dev:.3e} (λ = {lambda})");
            report["max_abs_vtilde_plus4_minus_am"] = Value::from(dev);
        }
        BetaSource::Csv(_) => {}
    }
    out.write_json("report.json", report)?;
    Ok(())
}
