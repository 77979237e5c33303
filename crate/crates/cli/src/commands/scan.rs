use sususy::beta_ode::CURVE_BOUND;
use sususy::interp::uniform_grid;
use sususy::io::{fmt_f64, CsvDoc};
use sususy::scanner::{scan_region, RegionMap};
use sususy::VERSION;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::OutputDir;
use crate::plots::figure1_script;

const CURVE_SAMPLES: usize = 201;

pub fn run(cfg: &RunConfig, out: &mut OutputDir) -> Result<(), CliError> {
    let map = scan_region(&cfg.scan)?;
    out.write_csv("region.csv", &map.to_csv())?;
    out.write_json("region.json", serde_json::from_str(&map.to_json()).expect("region json parses"))?;
    let overlay = curve_overlay(&map);
    out.write_csv("curve.csv", &overlay.doc.render())?;
    out.write_text("figure1.gp", &figure1_script(&cfg.scan))?;

    let (regular, singular) = map.counts();
    println!("{}x{} cells: {regular} regular, {singular} singular", cfg.scan.n_beta, cfg.scan.n_dbeta);
    let resolved = map.thresholds.iter().filter(|t| t.bracket().is_some()).count();
    println!("thresholds resolved in {resolved} of {} columns", map.thresholds.len());
    println!(
        "curve points inside the window: {}, in regular cells: {}, in pinched columns: {}",
        overlay.inside, overlay.in_regular, overlay.in_pinched
    );
    for w in &map.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

struct Overlay {
    doc: CsvDoc,
    inside: usize,
    in_regular: usize,
    in_pinched: usize,
}

/// Samples of `β'(0) = -2 + β(0)²` across the window, each tagged with the
/// label of the cell it falls in.
fn curve_overlay(map: &RegionMap) -> Overlay {
    let c = &map.config;
    let doc = CsvDoc::new(&["beta0", "dbeta0", "cell_label"])
        .with_meta("tool", format!("sususy {VERSION}"))
        .with_meta("fingerprint", c.fingerprint())
        .with_meta("curve", "dbeta0 = -2 + beta0^2, |beta0| < 2/sqrt(pi)");
    let lo = c.beta_min.max(-CURVE_BOUND);
    let hi = c.beta_max.min(CURVE_BOUND);
    let mut o = Overlay { doc, inside: 0, in_regular: 0, in_pinched: 0 };
    if !(lo < hi) {
        return o;
    }
    // Stay strictly inside the open interval |β(0)| < 2/√π.
    let shrink = 1e-9 * (hi - lo);
    for b in uniform_grid(lo + shrink, hi - shrink, CURVE_SAMPLES) {
        let d = -2.0 + b * b;
        let i = ((b - c.beta_min) / (c.beta_max - c.beta_min) * c.n_beta as f64).floor();
        let j = ((d - c.dbeta_min) / (c.dbeta_max - c.dbeta_min) * c.n_dbeta as f64).floor();
        let cell = (i >= 0.0 && j >= 0.0).then(|| map.cell(i as usize, j as usize)).flatten();
        let label = match cell {
            Some(cell) => {
                o.inside += 1;
                if cell.class.is_regular() {
                    o.in_regular += 1;
                } else if map.thresholds[i as usize].pinched {
                    o.in_pinched += 1;
                }
                cell.class.label()
            }
            None => "outside",
        };
        o.doc.push_row(vec![fmt_f64(b), fmt_f64(d), label.to_string()]);
    }
    o
}
