use proptest::prelude::*;
use sususy::beta_ode::{equation_lhs, ParticularBeta};
use sususy::interp::uniform_grid;
use sususy::operators::{
    constraint_residuals, factorization_residual, gamma_from_beta, intertwining_residual,
    partner_potential_from_beta, potential_from_beta, LadderBeta, PotentialTriple, ShiftConstants, TestFunction,
};
use sususy::spectral::abraham_moses;

const K: ShiftConstants = ShiftConstants::OSCILLATOR;

fn residuals(n: usize) -> (f64, f64) {
    let grid = uniform_grid(-8.0, 8.0, n);
    let t = PotentialTriple::oscillator(&LadderBeta, &grid).unwrap();
    let psi = TestFunction::gaussian();
    let i = intertwining_residual(&t, &LadderBeta, &psi, (-8.0, 8.0), n).unwrap();
    let f = factorization_residual(&t, &LadderBeta, K, &psi, (-8.0, 8.0), n).unwrap();
    assert!(i.reliable && f.reliable);
    (i.value, f.value)
}

#[test]
fn oscillator_operator_residuals_converge() {
    let (i1, f1) = residuals(4001);
    let (i2, f2) = residuals(2001);
    assert!(i1 <= 1e-3 && f1 <= 1e-3, "{i1:e} {f1:e}");
    assert!(i2 / i1 >= 3.0 && f2 / f1 >= 3.0, "ratios {} {}", i2 / i1, f2 / f1);
}

#[test]
fn probe_corpus_stays_small_on_the_oscillator() {
    let n = 4001;
    let grid = uniform_grid(-8.0, 8.0, n);
    let t = PotentialTriple::oscillator(&LadderBeta, &grid).unwrap();
    for psi in TestFunction::corpus() {
        let i = intertwining_residual(&t, &LadderBeta, &psi, (-8.0, 8.0), n).unwrap();
        assert!(i.reliable, "{}", psi.label());
        assert!(i.value <= 1e-2, "{}: {:e}", psi.label(), i.value);
    }
}

#[test]
fn particular_beta_reconstructs_abraham_moses() {
    for lambda in [1.5, 2.0, 5.0, -2.0] {
        let p = ParticularBeta::new(lambda).unwrap();
        for x in uniform_grid(-5.0, 5.0, 101) {
            let vt = partner_potential_from_beta(&p, K, x).unwrap();
            assert!((vt + 4.0 - abraham_moses(lambda, x).unwrap()).abs() <= 1e-8, "λ = {lambda}, x = {x}");
            assert!((potential_from_beta(&p, K, x).unwrap() - x * x).abs() <= 1e-8);
        }
    }
}

#[test]
fn closed_form_triple_satisfies_the_constraints() {
    let p = ParticularBeta::new(2.0).unwrap();
    let grid = uniform_grid(-5.0, 5.0, 2001);
    let t = PotentialTriple::from_beta(&p, K, &grid).unwrap();
    let r = constraint_residuals(&t, &p, K).unwrap();
    assert!(r.partner_shift <= 1e-10 && r.gamma_relation <= 1e-10);
    assert!(r.potential_ode <= 1e-3, "{:e}", r.potential_ode);
}

proptest! {
    #[test]
    fn ladder_beta_is_an_identity(x in prop_oneof![-5.0f64..-1e-3, 1e-3f64..5.0]) {
        prop_assert!((potential_from_beta(&LadderBeta, K, x).unwrap() - x * x).abs() <= 1e-12);
        prop_assert!((partner_potential_from_beta(&LadderBeta, K, x).unwrap() - (x * x - 4.0)).abs() <= 1e-12);
        prop_assert!((gamma_from_beta(&LadderBeta, K, x).unwrap() - (x * x - 1.0)).abs() <= 1e-12);
        prop_assert!(equation_lhs(x, -2.0 * x, -2.0, 0.0).abs() <= 1e-12);
    }
}
