use sususy::beta_ode::{integrate, InitialPoint};
use sususy::interp::uniform_grid;
use sususy::io::CsvDoc;
use sususy::spectral::{
    compare_spectra, discretize, double_well_analysis, eigenvalues, oscillator_levels, potential_csv, AbrahamMoses,
    Oscillator, PartnerPotential, Potential,
};
use sususy::ScanConfig;

const DOMAIN: (f64, f64) = (-8.0, 8.0);

fn max_error_vs_oscillator(pot: &dyn Potential, n: usize) -> f64 {
    let hd = discretize(pot, DOMAIN, n).unwrap();
    let s = eigenvalues(&hd, 6).unwrap();
    s.eigenvalues.iter().zip(oscillator_levels(6)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn partner(beta0: f64, dbeta0: f64) -> PartnerPotential {
    PartnerPotential::new(integrate(InitialPoint::new(beta0, dbeta0), &ScanConfig::default()).unwrap()).unwrap()
}

#[test]
fn oscillator_control() {
    assert!(max_error_vs_oscillator(&Oscillator, 4000) <= 1e-3);
}

#[test]
fn discretization_error_is_second_order() {
    let coarse = max_error_vs_oscillator(&Oscillator, 1000);
    let fine = max_error_vs_oscillator(&Oscillator, 2000);
    let ratio = coarse / fine;
    assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn abraham_moses_family_is_isospectral() {
    for lambda in [1.5, 2.0, 5.0, -2.0] {
        let e = max_error_vs_oscillator(&AbrahamMoses::new(lambda).unwrap(), 4000);
        assert!(e <= 1e-3, "λ = {lambda}: {e:e}");
    }
}

#[test]
fn regular_partners_are_isospectral() {
    for (b, d) in [(-0.7, -1.51), (-0.7, -1.0), (-0.3, -1.3)] {
        let pot = partner(b, d);
        assert!(pot.tail_residual() < 1e-6);
        let e = max_error_vs_oscillator(&pot, 4000);
        assert!(e <= 5e-3, "({b}, {d}): {e:e}");
    }
}

#[test]
fn partner_and_oscillator_spectra_compare_levelwise() {
    let a = eigenvalues(&discretize(&partner(-0.7, -1.0), DOMAIN, 2000).unwrap(), 4).unwrap();
    let b = eigenvalues(&discretize(&Oscillator, DOMAIN, 2000).unwrap(), 4).unwrap();
    let d = compare_spectra(&a, &b).unwrap();
    assert_eq!(d.len(), 4);
    assert!(d.iter().all(|v| *v <= 5e-3));
    let c = eigenvalues(&discretize(&Oscillator, DOMAIN, 1000).unwrap(), 4).unwrap();
    assert!(compare_spectra(&a, &c).is_err());
}

#[test]
fn off_curve_partner_is_an_asymmetric_double_well() {
    let pot = partner(-0.7, -1.0);
    let x = uniform_grid(-6.0, 6.0, 1201);
    let v: Vec<f64> = x.iter().map(|&t| pot.value(t)).collect();
    let r = double_well_analysis(&x, &v).unwrap();
    assert!(r.is_double_well());
    assert!(r.depth_difference().unwrap() > 1e-2);
    assert!(r.asymmetry > 0.01);
}

#[test]
fn on_curve_partner_is_a_single_well() {
    let pot = partner(-0.7, -1.51);
    let x = uniform_grid(-6.0, 6.0, 1201);
    let v: Vec<f64> = x.iter().map(|&t| pot.value(t)).collect();
    assert_eq!(double_well_analysis(&x, &v).unwrap().minima.len(), 1);
}

#[test]
fn csv_outputs_parse_back() {
    let hd = discretize(&Oscillator, DOMAIN, 500).unwrap();
    let s = eigenvalues(&hd, 3).unwrap();
    let doc = CsvDoc::parse(&s.to_csv("abc")).unwrap();
    assert_eq!(doc.meta("fingerprint"), Some("abc"));
    assert_eq!(doc.float_column("eigenvalue").unwrap(), s.eigenvalues);

    let grid = uniform_grid(-2.0, 2.0, 9);
    let doc = CsvDoc::parse(&potential_csv(&Oscillator, &grid, "abc")).unwrap();
    assert_eq!(doc.float_column("x").unwrap(), grid);
    let v = doc.float_column("V").unwrap();
    assert!(grid.iter().zip(&v).all(|(x, v)| (x * x - v).abs() < 1e-15));
}
