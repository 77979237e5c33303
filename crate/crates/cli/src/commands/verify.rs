use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use sususy::beta_ode::{beta_particular, equation_lhs, integrate, InitialPoint, ParticularBeta};
use sususy::interp::uniform_grid;
use sususy::operators::{
    factorization_residual, intertwining_residual, potential_from_beta, BetaProvider, LadderBeta, PotentialTriple,
    ShiftConstants, TestFunction,
};
use sususy::scanner::{classify_point, threshold_bisect, Direction};
use sususy::spectral::{
    abraham_moses, discretize, double_well_analysis, eigenvalues, oscillator_levels, Oscillator, PartnerPotential,
    Potential,
};
use sususy::VERSION;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::OutputDir;

/// Regular initial points used for the isospectrality check: one on the
/// particular-solution curve and two off it.
pub const SPECTRAL_FIXTURES: [(f64, f64); 3] = [(-0.7, -1.51), (-0.7, -1.0), (-0.3, -1.3)];

/// An asymmetric double well of `Ṽ + 4`.
pub const DOUBLE_WELL_FIXTURE: (f64, f64) = (-0.7, -1.0);

/// Columns whose threshold brackets are re-checked.
pub const BRACKET_COLUMNS: [f64; 3] = [-0.7, -0.3, 0.5];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

fn sup(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// Runs every check; numerical errors inside a check count as failures.
pub fn run_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let scan = &cfg.scan;
    let mut out = Vec::new();

    // Oscillator identity.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = ShiftConstants::OSCILLATOR;
    let mut v_err = 0.0f64;
    let mut ode_err = 0.0f64;
    for _ in 0..100 {
        let x: f64 = rng.gen_range(0.01..5.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        v_err = v_err.max((potential_from_beta(&LadderBeta, k, x)? - x * x).abs());
        ode_err = ode_err.max(equation_lhs(x, -2.0 * x, -2.0, 0.0).abs());
    }
    out.push(check(
        "oscillator-identity",
        v_err <= 1e-12 && ode_err <= 1e-12,
        format!("max |V - x^2| = {v_err:.2e}, max |eq. residual| = {ode_err:.2e}"),
    ));

    // Closed-form conformance and reconstruction.
    let probe = uniform_grid(-5.0, 5.0, 2001);
    let mut conf = Vec::new();
    let mut recon = Vec::new();
    for lambda in [1.5, 2.0, 5.0, -2.0] {
        let j0 = beta_particular(lambda, 0.0)?;
        let sol = integrate(InitialPoint::new(j0.beta, j0.dbeta), scan)?;
        let p = ParticularBeta::new(lambda)?;
        let mut e = 0.0f64;
        let mut r = 0.0f64;
        for &x in &probe {
            let (beta, dbeta, _) = sol.state_at(x)?;
            e = e.max((beta - p.jet(x)?.beta).abs());
            r = r.max((x * x + 2.0 * dbeta + 4.0 - abraham_moses(lambda, x)?).abs());
        }
        conf.push((lambda, e));
        if lambda > 0.0 {
            recon.push((lambda, r));
        }
    }
    out.push(check(
        "ode-conformance",
        conf.iter().all(|(_, e)| *e <= 1e-6),
        conf.iter().map(|(l, e)| format!("λ={l}: {e:.2e}")).collect::<Vec<_>>().join(", "),
    ));
    out.push(check(
        "am-reconstruction",
        recon.iter().all(|(_, e)| *e <= 1e-6),
        recon.iter().map(|(l, e)| format!("λ={l}: {e:.2e}")).collect::<Vec<_>>().join(", "),
    ));

    // Operator identities on the oscillator, two resolutions.
    let op = |n: usize| -> Result<(f64, f64), CliError> {
        let grid = uniform_grid(-8.0, 8.0, n);
        let t = PotentialTriple::oscillator(&LadderBeta, &grid)?;
        let psi = TestFunction::gaussian();
        let i = intertwining_residual(&t, &LadderBeta, &psi, (-8.0, 8.0), n)?;
        let f = factorization_residual(&t, &LadderBeta, k, &psi, (-8.0, 8.0), n)?;
        Ok((i.value, f.value))
    };
    let (i1, f1) = op(cfg.operator_n)?;
    let (i2, f2) = op((cfg.operator_n - 1) / 2 + 1)?;
    out.push(check(
        "operator-residuals",
        i1 <= 1e-3 && f1 <= 1e-3 && i2 / i1 >= 3.0 && f2 / f1 >= 3.0,
        format!("intertwining {i1:.2e} (ratio {:.2}), factorization {f1:.2e} (ratio {:.2})", i2 / i1, f2 / f1),
    ));

    // Curve containment and threshold brackets.
    let mut irregular = Vec::new();
    for b in uniform_grid(-1.0, 1.0, 20) {
        let p = InitialPoint::on_curve(b)?;
        if !classify_point(p, scan)?.is_regular() {
            irregular.push(b);
        }
    }
    out.push(check("curve-containment", irregular.is_empty(), format!("20 curve points, irregular at {irregular:?}")));

    let mut bad = Vec::new();
    let tol = scan.bisect_tol;
    let mut brackets = Vec::new();
    for b in BRACKET_COLUMNS {
        let up = threshold_bisect(b, Direction::Up, scan)?;
        let down = threshold_bisect(b, Direction::Down, scan)?;
        let class = |d: f64| classify_point(InitialPoint::new(b, d), scan).map(|c| c.is_regular());
        if !(class(up.value - tol)? && !class(up.value + tol)? && class(down.value + tol)? && !class(down.value - tol)?) {
            bad.push(b);
        }
        brackets.push(format!("β(0)={b}: [{:.5}, {:.5}]", down.value, up.value));
    }
    out.push(check("bracket-validity", bad.is_empty(), format!("{}; failing {bad:?}", brackets.join(", "))));

    // Isospectrality of the fixtures.
    let spectrum = |pot: &dyn Potential| -> Result<Vec<f64>, CliError> {
        let hd = discretize(pot, cfg.spectral_domain, cfg.spectral_n)?;
        Ok(eigenvalues(&hd, cfg.kmax)?.eigenvalues)
    };
    let exact = oscillator_levels(cfg.kmax);
    let osc_err = sup(spectrum(&Oscillator)?.iter().zip(&exact).map(|(a, b)| (a - b).abs()));
    let mut fixture_err = Vec::new();
    for (b, d) in SPECTRAL_FIXTURES {
        let pot = PartnerPotential::new(integrate(InitialPoint::new(b, d), scan)?)?;
        let e = sup(spectrum(&pot)?.iter().zip(&exact).map(|(a, b)| (a - b).abs()));
        fixture_err.push(((b, d), e));
    }
    out.push(check(
        "isospectrality",
        osc_err <= 1e-3 && fixture_err.iter().all(|(_, e)| *e <= 5e-3),
        format!(
            "oscillator {osc_err:.2e}; {} (hypothesis-consistent, not proof)",
            fixture_err.iter().map(|(p, e)| format!("{p:?}: {e:.2e}")).collect::<Vec<_>>().join(", ")
        ),
    ));

    // Asymmetric double well.
    let (b, d) = DOUBLE_WELL_FIXTURE;
    let pot = PartnerPotential::new(integrate(InitialPoint::new(b, d), scan)?)?;
    let x = uniform_grid(-scan.x_max, scan.x_max, 1201);
    let v: Vec<f64> = x.iter().map(|&t| pot.value(t)).collect();
    let r = double_well_analysis(&x, &v)?;
    let dd = r.depth_difference();
    out.push(check(
        "double-well",
        r.is_double_well() && dd.is_some_and(|d| d > 1e-2) && r.asymmetry > 0.01,
        format!(
            "({b}, {d}): minima at {:?}, depth difference {dd:?}, asymmetry {:.3}",
            r.minima.iter().map(|m| (m.x * 1e4).round() / 1e4).collect::<Vec<_>>(),
            r.asymmetry
        ),
    ));

    Ok(out)
}

pub fn run(cfg: &RunConfig, out: &mut OutputDir) -> Result<(), CliError> {
    let checks = run_suite(cfg)?;
    let mut text = String::new();
    for c in &checks {
        let line = format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        println!("{line}");
        text.push_str(&line);
        text.push('\n');
    }
    out.write_text("verify.txt", &text)?;
    out.write_json(
        "verify.json",
        json!({
            "tool": format!("sususy {VERSION}"),
            "fingerprint": out.fingerprint(),
            "checks": checks,
        }),
    )?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("failed checks: {}", failed.join(", "))))
    }
}
