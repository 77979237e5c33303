//! Low-lying spectra of one-dimensional Schrödinger operators.
//!
//! `H = -d²/dx² + V` is discretized with the three-point Laplacian on a
//! uniform interior grid of `[a, b]` with Dirichlet ends, and its lowest
//! eigenvalues are found by Sturm-count bisection. The module also provides
//! the Abraham–Moses family
//!
//! ```text
//! V_λ(x) = x² - 2 d/dx [ e^{-x²} / (λ + ∫₀ˣ e^{-y²} dy) ],   |λ| > √π/2
//! ```
//!
//! which is isospectral to `x²`, the shifted partner `Ṽ + 4 = x² + 2β' + 4`
//! of an integrated `β`, and a double-well detector.

mod double_well;
mod hamiltonian;

pub use double_well::{double_well_analysis, DoubleWellReport, Minimum, PROMINENCE_FRACTION};
pub use hamiltonian::{
    compare_spectra, discretize, eigenvalues, oscillator_levels, sturm_count, DiscretizedHamiltonian, Spectrum,
};

use crate::beta_ode::{BetaSolution, ParticularBeta, SolutionStatus};
use crate::interp::{CubicSpline, SplineEnd};
use crate::io::{fmt_f64, CsvDoc};
use crate::{Error, Result, VERSION};

/// A potential that can be evaluated pointwise.
pub trait Potential {
    fn value(&self, x: f64) -> f64;

    /// Provenance string carried into spectra and file headers.
    fn label(&self) -> String;
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

/// `V = x²`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oscillator;

impl Potential for Oscillator {
    fn value(&self, x: f64) -> f64 {
        x * x
    }

    fn label(&self) -> String {
        "oscillator x^2".into()
    }
}

/// A closure with a label.
pub struct FnPotential<F> {
    label: String,
    f: F,
}

impl<F: Fn(f64) -> f64> FnPotential<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        Self { label: label.into(), f }
    }
}

impl<F: Fn(f64) -> f64> Potential for FnPotential<F> {
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Samples interpolated by a natural cubic spline; NaN outside the samples.
#[derive(Debug, Clone)]
pub struct SampledPotential {
    spline: CubicSpline,
    label: String,
}

impl SampledPotential {
    pub fn new(x: &[f64], v: &[f64], label: impl Into<String>) -> Result<Self> {
        if let Some(i) = v.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonFinitePotential { x: x.get(i).copied().unwrap_or(f64::NAN), value: v[i] });
        }
        Ok(Self { spline: CubicSpline::new(x, v, SplineEnd::Natural)?, label: label.into() })
    }

    pub fn domain(&self) -> (f64, f64) {
        self.spline.domain()
    }
}

impl Potential for SampledPotential {
    fn value(&self, x: f64) -> f64 {
        self.spline.eval(x)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// `V_λ(x)` from the analytic derivative of the correction term.
pub fn abraham_moses(lambda: f64, x: f64) -> Result<f64> {
    Ok(AbrahamMoses::new(lambda)?.value(x))
}

#[derive(Debug, Clone, Copy)]
pub struct AbrahamMoses {
    beta: ParticularBeta,
}

impl AbrahamMoses {
    pub fn new(lambda: f64) -> Result<Self> {
        Ok(Self { beta: ParticularBeta::new(lambda)? })
    }

    pub fn lambda(&self) -> f64 {
        self.beta.lambda()
    }
}

impl Potential for AbrahamMoses {
    fn value(&self, x: f64) -> f64 {
        // With g = e^{-x²}/(λ+F): g' = -2x g - g², so V_λ = x² + 4x g + 2g².
        let g = self.beta.correction(x);
        x * x + 4.0 * x * g + 2.0 * g * g
    }

    fn label(&self) -> String {
        format!("abraham-moses lambda={}", self.lambda())
    }
}

/// `Ṽ + 4 = x² + 2β' + 4` of a regular integrated solution.
///
/// Beyond the integration window the potential continues as `x²`, i.e. the
/// tail `2β' + 4` is taken to be zero; [`tail_residual`](Self::tail_residual)
/// reports how far that is from the integrated value at the window ends.
#[derive(Debug, Clone)]
pub struct PartnerPotential {
    solution: BetaSolution,
}

impl PartnerPotential {
    pub fn new(solution: BetaSolution) -> Result<Self> {
        if let SolutionStatus::Singular { x_sing, .. } = solution.status() {
            return Err(Error::SingularSolution(*x_sing));
        }
        Ok(Self { solution })
    }

    pub fn solution(&self) -> &BetaSolution {
        &self.solution
    }

    /// `max |2β' + 4|` at the two window ends.
    pub fn tail_residual(&self) -> f64 {
        2.0 * self.solution.tail_mismatch()
    }
}

impl Potential for PartnerPotential {
    fn value(&self, x: f64) -> f64 {
        match self.solution.state_at(x) {
            Ok((_, dbeta, _)) => x * x + 2.0 * dbeta + 4.0,
            Err(_) => x * x,
        }
    }

    fn label(&self) -> String {
        let p = self.solution.initial();
        let (lo, hi) = self.solution.span();
        format!(
            "partner+4 beta0={} dbeta0={} (integrated on [{lo}, {hi}], x^2 beyond; tail residual {:e})",
            p.beta0,
            p.dbeta0,
            self.tail_residual()
        )
    }
}

/// CSV of `(x, V)` samples of `pot` on `grid`.
pub fn potential_csv(pot: &dyn Potential, grid: &[f64], fingerprint: &str) -> String {
    let mut doc = CsvDoc::new(&["x", "V"])
        .with_meta("tool", format!("sususy {VERSION}"))
        .with_meta("fingerprint", fingerprint)
        .with_meta("potential", pot.label());
    for &x in grid {
        doc.push_row(vec![fmt_f64(x), fmt_f64(pot.value(x))]);
    }
    doc.render()
}
