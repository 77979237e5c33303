//! Closed-form potentials of a second-order intertwiner and checks of the
//! operator identities they satisfy.
//!
//! The intertwiner is `A† = d²/dx² + β(x) d/dx + γ(x)` with
//! `H̃ A† = A† H`, `H = -d²/dx² + V`, `H̃ = -d²/dx² + Ṽ`. Given `β` and the
//! two integration constants `(c, δ)`:
//!
//! ```text
//! V  = β''/(2β) - (β'/(2β))² - β' + β²/4 + c/β² - δ/2
//! Ṽ  = β''/(2β) - (β'/(2β))² + β' + β²/4 + c/β² - δ/2
//! γ  = -β''/(2β) + (β'/(2β))² + β'/2 + β²/4 - c/β²
//! ```
//!
//! The pole terms `-(β'/(2β))² + c/β²` are evaluated in the combined form
//! `(4c - β'²)/(4β²)` so that cancelling poles (for example `β = -2x` with
//! `c = 1`) cancel exactly instead of through a difference of large numbers.
//!
//! The product `A A†` obeys `A A† = (H + δ/2)² - c`; written as a 2×2 block
//! operator on `(H̃, H)` that is `H_ss = (H_s + δ/2)² - c`.

mod residuals;
mod triple;

pub use residuals::{
    factorization_residual, intertwining_residual, OperatorResidual, TestFunction, BOUNDARY_FLOOR,
};
pub use triple::{constraint_residuals, ConstraintResiduals, PotentialTriple};

use crate::{Error, Result};

/// `|β|` below this is treated as a pole of the closed forms.
pub const BETA_FLOOR: f64 = 1e-8;

/// The integration constants `c` and `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftConstants {
    pub c: f64,
    pub delta: f64,
}

impl ShiftConstants {
    /// The pair that makes `β = -2x` reproduce `V = x²`.
    pub const OSCILLATOR: ShiftConstants = ShiftConstants { c: 1.0, delta: 4.0 };

    pub fn new(c: f64, delta: f64) -> Self {
        Self { c, delta }
    }

    pub fn oscillator() -> Self {
        Self::OSCILLATOR
    }

    pub fn is_oscillator(&self) -> bool {
        *self == Self::OSCILLATOR
    }
}

/// `β` and its first two derivatives at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaJet {
    pub beta: f64,
    pub dbeta: f64,
    pub ddbeta: f64,
}

/// How a [`BetaProvider`] obtains its values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaKind {
    ClosedForm,
    /// Dense output of an integrated solution.
    Interpolated,
}

/// Anything that can evaluate `β`, `β'`, `β''`.
pub trait BetaProvider {
    fn jet(&self, x: f64) -> Result<BetaJet>;

    fn kind(&self) -> BetaKind;

    /// Interval on which [`jet`](Self::jet) is defined.
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

/// `β = -2x`, the coefficient of `A† = (a†)²` for the oscillator.
#[derive(Debug, Clone, Copy, Default)]
pub struct LadderBeta;

impl BetaProvider for LadderBeta {
    fn jet(&self, x: f64) -> Result<BetaJet> {
        Ok(BetaJet { beta: -2.0 * x, dbeta: -2.0, ddbeta: 0.0 })
    }

    fn kind(&self) -> BetaKind {
        BetaKind::ClosedForm
    }
}

impl<P: BetaProvider + ?Sized> BetaProvider for &P {
    fn jet(&self, x: f64) -> Result<BetaJet> {
        (**self).jet(x)
    }

    fn kind(&self) -> BetaKind {
        (**self).kind()
    }

    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
}

struct ClosedFormTerms {
    /// `β''/(2β) + (4c - β'²)/(4β²)`
    singular: f64,
    dbeta: f64,
    beta_sq_quarter: f64,
}

fn terms(jet: &BetaJet, k: ShiftConstants, x: f64) -> Result<ClosedFormTerms> {
    let b = jet.beta;
    if !(b.abs() >= BETA_FLOOR) {
        return Err(Error::BetaFloor { x, beta: b, floor: BETA_FLOOR });
    }
    let singular = jet.ddbeta / (2.0 * b) + (4.0 * k.c - jet.dbeta * jet.dbeta) / (4.0 * b * b);
    Ok(ClosedFormTerms { singular, dbeta: jet.dbeta, beta_sq_quarter: 0.25 * b * b })
}

/// Base potential `V` from a jet of `β`.
pub fn potential_from_jet(jet: &BetaJet, k: ShiftConstants, x: f64) -> Result<f64> {
    let t = terms(jet, k, x)?;
    Ok(t.singular - t.dbeta + t.beta_sq_quarter - 0.5 * k.delta)
}

/// Partner potential `Ṽ` from a jet of `β`.
pub fn partner_from_jet(jet: &BetaJet, k: ShiftConstants, x: f64) -> Result<f64> {
    let t = terms(jet, k, x)?;
    Ok(t.singular + t.dbeta + t.beta_sq_quarter - 0.5 * k.delta)
}

/// Coefficient `γ` from a jet of `β`.
pub fn gamma_from_jet(jet: &BetaJet, k: ShiftConstants, x: f64) -> Result<f64> {
    let t = terms(jet, k, x)?;
    Ok(-t.singular + 0.5 * t.dbeta + t.beta_sq_quarter)
}

pub fn potential_from_beta(beta: &dyn BetaProvider, k: ShiftConstants, x: f64) -> Result<f64> {
    potential_from_jet(&beta.jet(x)?, k, x)
}

pub fn partner_potential_from_beta(beta: &dyn BetaProvider, k: ShiftConstants, x: f64) -> Result<f64> {
    partner_from_jet(&beta.jet(x)?, k, x)
}

pub fn gamma_from_beta(beta: &dyn BetaProvider, k: ShiftConstants, x: f64) -> Result<f64> {
    gamma_from_jet(&beta.jet(x)?, k, x)
}
