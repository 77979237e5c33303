//! The oscillator `β`-equation.
//!
//! With `V = x²` the closed form for `V` in terms of `β` becomes an identity
//! only for `c = 1`, `δ = 4`, and turns into the second-order equation
//!
//! ```text
//! ββ'' - β'²/2 - 2β²β' + β⁴/2 - 4β² - 2x²β² + 2 = 0
//! ```
//!
//! This module integrates it from an initial point `(β(0), β'(0))`, detects
//! singular trajectories, and provides the closed-form particular family
//!
//! ```text
//! β_p(x) = -2x - e^{-x²} / (λ + ∫₀ˣ e^{-y²} dy),   |λ| > √π/2
//! ```
//!
//! whose initial points trace the curve `β'(0) = -2 + β(0)²`.

mod integrator;
mod particular;
mod solution;

pub use integrator::integrate;
pub use particular::{beta_particular, ParticularBeta};
pub use solution::{BetaSolution, Sample, Side, SolutionStatus};

use crate::interp::{uniform_grid, CubicSpline, SplineEnd};
use crate::special::HALF_SQRT_PI;
use crate::{Error, Result};

/// Default division guard for [`rhs`].
pub const DEFAULT_BETA_FLOOR: f64 = 1e-8;

/// `2/√π`, the bound on `|β(0)|` along the particular-solution curve.
pub const CURVE_BOUND: f64 = 1.0 / HALF_SQRT_PI;

/// `(β(0), β'(0))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialPoint {
    pub beta0: f64,
    pub dbeta0: f64,
}

impl InitialPoint {
    pub fn new(beta0: f64, dbeta0: f64) -> Self {
        Self { beta0, dbeta0 }
    }

    /// The point of the particular-solution curve above `beta0`.
    pub fn on_curve(beta0: f64) -> Result<Self> {
        Ok(Self { beta0, dbeta0: initial_curve(beta0)? })
    }
}

/// `β'(0) = -2 + β(0)²` for `|β(0)| < 2/√π`.
pub fn initial_curve(beta0: f64) -> Result<f64> {
    if !(beta0.abs() < CURVE_BOUND) {
        return Err(Error::CurveOutOfRange(beta0));
    }
    Ok(-2.0 + beta0 * beta0)
}

/// `ββ''` as dictated by the equation: `β'²/2 + 2β²β' - β⁴/2 + 4β² + 2x²β² - 2`.
pub fn numerator(x: f64, beta: f64, dbeta: f64) -> f64 {
    let b2 = beta * beta;
    0.5 * dbeta * dbeta + 2.0 * b2 * dbeta - 0.5 * b2 * b2 + 4.0 * b2 + 2.0 * x * x * b2 - 2.0
}

/// Left-hand side of the `β`-equation for a given jet.
pub fn equation_lhs(x: f64, beta: f64, dbeta: f64, ddbeta: f64) -> f64 {
    beta * ddbeta - numerator(x, beta, dbeta)
}

/// `β''` solved from the equation, with the default division guard.
pub fn rhs(x: f64, beta: f64, dbeta: f64) -> Result<f64> {
    rhs_with_floor(x, beta, dbeta, DEFAULT_BETA_FLOOR)
}

pub fn rhs_with_floor(x: f64, beta: f64, dbeta: f64, floor: f64) -> Result<f64> {
    if !(beta.abs() >= floor) {
        return Err(Error::BetaFloor { x, beta, floor });
    }
    Ok(numerator(x, beta, dbeta) / beta)
}

/// Number of probe points used by [`equation_residual`].
pub const RESIDUAL_PROBES: usize = 4001;

/// Sup-norm of the equation's left side along a regular solution.
///
/// `β` and `β'` are interpolated by clamped cubic splines through the
/// samples; `β''` is the derivative of the `β'` spline.
pub fn equation_residual(solution: &BetaSolution) -> Result<f64> {
    if let SolutionStatus::Singular { x_sing, .. } = solution.status() {
        return Err(Error::SingularSolution(*x_sing));
    }
    let s = solution.samples();
    let xs: Vec<f64> = s.iter().map(|p| p.x).collect();
    let b: Vec<f64> = s.iter().map(|p| p.beta).collect();
    let db: Vec<f64> = s.iter().map(|p| p.dbeta).collect();
    let (first, last) = (&s[0], &s[s.len() - 1]);
    let beta_spline = CubicSpline::new(&xs, &b, SplineEnd::Clamped { start: first.dbeta, end: last.dbeta })?;
    let dbeta_spline = CubicSpline::new(&xs, &db, SplineEnd::Clamped { start: first.ddbeta, end: last.ddbeta })?;

    let mut worst = 0.0f64;
    for x in uniform_grid(first.x, last.x, RESIDUAL_PROBES) {
        let beta = beta_spline.eval(x);
        let (dbeta, ddbeta) = dbeta_spline.eval_with_derivative(x).ok_or(Error::OutOfDomain {
            x,
            lo: first.x,
            hi: last.x,
        })?;
        worst = worst.max(equation_lhs(x, beta, dbeta, ddbeta).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_solves_equation() {
        assert_eq!(rhs(1.0, -2.0, -2.0).unwrap(), 0.0);
        for &x in &[0.3, 1.7, 4.0, -2.5] {
            assert!(equation_lhs(x, -2.0 * x, -2.0, 0.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rhs_matches_particular_second_derivative() {
        // β_p(0) = -1/λ, β_p'(0) = -2 + 1/λ², β_p''(0) = 2/λ - 2/λ³ for λ = 2.
        let got = rhs(0.0, -0.5, -1.75).unwrap();
        assert!((got - 0.75).abs() < 1e-15);
        let jet = beta_particular(2.0, 0.0).unwrap();
        assert!((got - jet.ddbeta).abs() < 1e-14);
    }

    #[test]
    fn rhs_division_guard() {
        assert!(matches!(rhs(0.0, 1e-12, 0.0), Err(Error::BetaFloor { .. })));
    }

    #[test]
    fn curve_values() {
        assert_eq!(initial_curve(0.0).unwrap(), -2.0);
        assert!((initial_curve(-0.7).unwrap() + 1.51).abs() < 1e-15);
        assert!(matches!(initial_curve(1.2), Err(Error::CurveOutOfRange(_))));
        assert!(initial_curve(CURVE_BOUND).is_err());
        assert!((CURVE_BOUND - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-15);
    }

    #[test]
    fn fake_solution_has_large_residual() {
        // β = -2x + 0.01 sin x is not a solution; its residual at x = 2 alone
        // is about 0.42 by direct substitution.
        let f = |x: f64| (-2.0 * x + 0.01 * x.sin(), -2.0 + 0.01 * x.cos(), -0.01 * x.sin());
        let (b, db, ddb) = f(2.0);
        let at_two = equation_lhs(2.0, b, db, ddb).abs();
        assert!(at_two > 0.4, "{at_two}");

        let samples: Vec<Sample> = uniform_grid(-5.0, 5.0, 401)
            .into_iter()
            .map(|x| {
                let (beta, dbeta, ddbeta) = f(x);
                Sample { x, beta, dbeta, ddbeta }
            })
            .collect();
        let sol = BetaSolution::from_samples(samples, SolutionStatus::Regular, InitialPoint::new(0.0, -1.99), "manual").unwrap();
        assert!(equation_residual(&sol).unwrap() >= 1e-2);
    }
}
