//! One PASS/FAIL line per acceptance criterion, written straight to stderr so
//! the lines show up in `cargo test` output without `--nocapture`.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sususy::beta_ode::{beta_particular, equation_lhs, initial_curve, integrate, InitialPoint, ParticularBeta};
use sususy::interp::uniform_grid;
use sususy::operators::{
    factorization_residual, intertwining_residual, potential_from_beta, BetaProvider, LadderBeta, PotentialTriple,
    ShiftConstants, TestFunction,
};
use sususy::scanner::classify_point;
use sususy::spectral::{
    abraham_moses, discretize, double_well_analysis, eigenvalues, oscillator_levels, Oscillator, PartnerPotential,
    Potential,
};
use sususy::ScanConfig;
use tempfile::TempDir;

const CONFORMANCE_TOL: f64 = 1e-6;
const CONFORMANCE_SECONDS: f64 = 1.0;
const IDENTITY_TOL: f64 = 1e-12;
const RECONSTRUCTION_TOL: f64 = 1e-6;
const OPERATOR_TOL: f64 = 1e-3;
const OPERATOR_RATIO: f64 = 3.0;
const SCAN_SECONDS: f64 = 600.0;
const ISOSPECTRAL_TOL: f64 = 5e-3;
const OSCILLATOR_TOL: f64 = 1e-3;
const DEPTH_MIN: f64 = 1e-2;
const ASYMMETRY_MIN: f64 = 0.01;

const SPECTRAL_FIXTURES: [(f64, f64); 3] = [(-0.7, -1.51), (-0.7, -1.0), (-0.3, -1.3)];
const DOUBLE_WELL_FIXTURE: (f64, f64) = (-0.7, -1.0);

struct Outcome {
    passed: bool,
    detail: String,
}

fn report(id: u32, title: &str, o: &Outcome) {
    let mark = if o.passed { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr().lock(), "acceptance {id} {mark} {title}: {}", o.detail);
}

fn sup(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn closed_form_conformance() -> Outcome {
    let cfg = ScanConfig::default();
    let mut passed = true;
    let mut parts = Vec::new();
    for lambda in [1.5, 2.0, 5.0, -2.0] {
        let start = Instant::now();
        let j = beta_particular(lambda, 0.0).unwrap();
        let sol = integrate(InitialPoint::new(j.beta, j.dbeta), &cfg).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let p = ParticularBeta::new(lambda).unwrap();
        let err = sup(uniform_grid(-5.0, 5.0, 2001)
            .into_iter()
            .map(|x| (sol.state_at(x).unwrap().0 - p.jet(x).unwrap().beta).abs()));
        passed &= sol.is_regular() && err <= CONFORMANCE_TOL && secs <= CONFORMANCE_SECONDS;
        parts.push(format!("λ={lambda}: {err:.2e} in {secs:.3}s"));
    }
    Outcome { passed, detail: parts.join(", ") }
}

fn oscillator_identity() -> Outcome {
    let k = ShiftConstants::OSCILLATOR;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut v_err = 0.0f64;
    let mut lhs = 0.0f64;
    for _ in 0..100 {
        let x = rng.gen_range(-5.0..5.0);
        v_err = v_err.max((potential_from_beta(&LadderBeta, k, x).unwrap() - x * x).abs());
        lhs = lhs.max(equation_lhs(x, -2.0 * x, -2.0, 0.0).abs());
    }
    Outcome {
        passed: v_err <= IDENTITY_TOL && lhs <= IDENTITY_TOL,
        detail: format!("100 points: max |V - x²| = {v_err:.2e}, max |ββ'' - N| = {lhs:.2e}"),
    }
}

fn am_reconstruction() -> Outcome {
    let cfg = ScanConfig::default();
    let mut passed = true;
    let mut parts = Vec::new();
    for lambda in [1.5, 2.0, 5.0] {
        let j = beta_particular(lambda, 0.0).unwrap();
        let sol = integrate(InitialPoint::new(j.beta, j.dbeta), &cfg).unwrap();
        let err = sup(uniform_grid(-5.0, 5.0, 2001).into_iter().map(|x| {
            let (_, dbeta, _) = sol.state_at(x).unwrap();
            (x * x + 2.0 * dbeta + 4.0 - abraham_moses(lambda, x).unwrap()).abs()
        }));
        passed &= err <= RECONSTRUCTION_TOL;
        parts.push(format!("λ={lambda}: {err:.2e}"));
    }
    Outcome { passed, detail: parts.join(", ") }
}

fn operator_residuals() -> Outcome {
    let k = ShiftConstants::OSCILLATOR;
    let psi = TestFunction::gaussian();
    let at = |n: usize| {
        let grid = uniform_grid(-8.0, 8.0, n);
        let t = PotentialTriple::oscillator(&LadderBeta, &grid).unwrap();
        let i = intertwining_residual(&t, &LadderBeta, &psi, (-8.0, 8.0), n).unwrap();
        let f = factorization_residual(&t, &LadderBeta, k, &psi, (-8.0, 8.0), n).unwrap();
        (i.value, f.value)
    };
    let (i1, f1) = at(4001);
    let (i2, f2) = at(2001);
    Outcome {
        passed: i1 <= OPERATOR_TOL && f1 <= OPERATOR_TOL && i2 / i1 >= OPERATOR_RATIO && f2 / f1 >= OPERATOR_RATIO,
        detail: format!(
            "n=4001: intertwining {i1:.2e}, factorization {f1:.2e}; coarse/fine ratios {:.2}, {:.2}",
            i2 / i1,
            f2 / f1
        ),
    }
}

fn run_scan(root: &Path) -> Duration {
    let start = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_sususy"))
        .current_dir(root)
        .env_remove("SUSUSY_OUT_DIR")
        .arg("scan")
        .output()
        .expect("binary runs");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    start.elapsed()
}

fn region_map_properties(root: &Path, elapsed: Duration) -> Outcome {
    let cfg = ScanConfig::default();
    let off_curve: Vec<f64> = uniform_grid(-1.0, 1.0, 20)
        .into_iter()
        .filter(|&b| {
            let p = InitialPoint::new(b, initial_curve(b).unwrap());
            !classify_point(p, &cfg).unwrap().is_regular()
        })
        .collect();

    let region: Value =
        serde_json::from_str(&std::fs::read_to_string(root.join("out/scan/region.json")).unwrap()).unwrap();
    let tol = cfg.bisect_tol;
    let regular = |b: f64, d: f64| classify_point(InitialPoint::new(b, d), &cfg).unwrap().is_regular();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut pinched = 0;
    for col in region["thresholds"].as_array().unwrap() {
        if col["pinched"] == true {
            pinched += 1;
        }
        let b = col["beta0"].as_f64().unwrap();
        if let Some(hi) = col["upper"]["value"].as_f64() {
            checked += 1;
            if !(regular(b, hi - tol) && !regular(b, hi + tol)) {
                bad.push(format!("upper@{b}"));
            }
        }
        if let Some(lo) = col["lower"]["value"].as_f64() {
            checked += 1;
            if !(regular(b, lo + tol) && !regular(b, lo - tol)) {
                bad.push(format!("lower@{b}"));
            }
        }
    }
    let overlay = std::fs::read_to_string(root.join("out/scan/curve.csv")).unwrap();
    let labels: Vec<&str> =
        overlay.lines().filter(|l| !l.starts_with('#')).skip(1).filter_map(|l| l.rsplit(',').next()).collect();
    let in_regular = labels.iter().filter(|l| **l == "regular").count();
    let secs = elapsed.as_secs_f64();
    Outcome {
        passed: off_curve.is_empty() && bad.is_empty() && checked > 0 && secs <= SCAN_SECONDS,
        detail: format!(
            "curve samples not regular: {}; {checked} thresholds checked at ±{tol}, {} invalid; \
             {pinched} pinched column(s) left unresolved; curve overlay in regular cells {in_regular}/{}; \
             default scan {secs:.1}s",
            off_curve.len(),
            bad.len(),
            labels.len()
        ),
    }
}

fn spectrum_error(pot: &dyn Potential) -> f64 {
    let hd = discretize(pot, (-8.0, 8.0), 4000).unwrap();
    let s = eigenvalues(&hd, 6).unwrap();
    sup(s.eigenvalues.iter().zip(oscillator_levels(6)).map(|(a, b)| (a - b).abs()))
}

fn isospectrality() -> Outcome {
    let cfg = ScanConfig::default();
    let osc = spectrum_error(&Oscillator);
    let mut passed = osc <= OSCILLATOR_TOL;
    let mut parts = vec![format!("oscillator {osc:.2e}")];
    for (b, d) in SPECTRAL_FIXTURES {
        let sol = integrate(InitialPoint::new(b, d), &cfg).unwrap();
        let e = match PartnerPotential::new(sol) {
            Ok(p) => spectrum_error(&p),
            Err(_) => f64::INFINITY,
        };
        passed &= e <= ISOSPECTRAL_TOL;
        parts.push(format!("({b}, {d}) {e:.2e}"));
    }
    Outcome { passed, detail: format!("{} (hypothesis-consistent, not proof)", parts.join(", ")) }
}

fn double_well() -> Outcome {
    let (b, d) = DOUBLE_WELL_FIXTURE;
    let sol = integrate(InitialPoint::new(b, d), &ScanConfig::default()).unwrap();
    let pot = PartnerPotential::new(sol).unwrap();
    let x = uniform_grid(-6.0, 6.0, 1201);
    let v: Vec<f64> = x.iter().map(|&t| pot.value(t)).collect();
    let r = double_well_analysis(&x, &v).unwrap();
    let depth = r.depth_difference().unwrap_or(0.0);
    Outcome {
        passed: r.minima.len() == 2 && depth > DEPTH_MIN && r.asymmetry > ASYMMETRY_MIN,
        detail: format!(
            "({b}, {d}): {} minima, depth difference {depth:.3}, asymmetry {:.3}",
            r.minima.len(),
            r.asymmetry
        ),
    }
}

/// File contents with the wall-clock field dropped from the manifest.
fn payload(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            let name = e.file_name().into_string().unwrap();
            let mut text = std::fs::read_to_string(e.path()).unwrap();
            if name == "manifest.json" {
                let mut v: Value = serde_json::from_str(&text).unwrap();
                v.as_object_mut().unwrap().remove("duration_seconds");
                text = v.to_string();
            }
            (name, text)
        })
        .collect();
    files.sort();
    files
}

fn determinism(a: &Path, b: &Path) -> Outcome {
    let pa = payload(&a.join("out/scan"));
    let pb = payload(&b.join("out/scan"));
    let differing: Vec<&str> =
        pa.iter().zip(&pb).filter(|(x, y)| x != y).map(|(x, _)| x.0.as_str()).collect();
    Outcome {
        passed: pa.len() == pb.len() && differing.is_empty(),
        detail: format!("{} files compared, differing: {differing:?}", pa.len()),
    }
}

#[test]
fn acceptance() {
    let first = TempDir::new().unwrap();
    let second = TempDir::new().unwrap();
    let elapsed = run_scan(first.path());
    run_scan(second.path());

    let results = [
        (1, "closed-form ODE conformance", closed_form_conformance()),
        (2, "oscillator identity", oscillator_identity()),
        (3, "Abraham–Moses reconstruction", am_reconstruction()),
        (4, "intertwining and factorization residuals", operator_residuals()),
        (5, "region-map properties", region_map_properties(first.path(), elapsed)),
        (6, "isospectrality", isospectrality()),
        (7, "asymmetric double well", double_well()),
        (8, "scan determinism", determinism(first.path(), second.path())),
    ];
    for (id, title, o) in &results {
        report(*id, title, o);
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.2.passed).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
