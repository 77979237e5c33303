use super::{gamma_from_jet, partner_from_jet, potential_from_jet, BetaProvider, ShiftConstants};
use crate::interp::{check_increasing, CubicSpline, SplineEnd};
use crate::{Error, Result};

/// Sampled `V`, `Ṽ`, `γ` on a shared grid, with the constants that produced
/// them.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTriple {
    pub grid: Vec<f64>,
    pub v: Vec<f64>,
    pub vtilde: Vec<f64>,
    pub gamma: Vec<f64>,
    pub constants: ShiftConstants,
}

impl PotentialTriple {
    pub fn new(
        grid: Vec<f64>,
        v: Vec<f64>,
        vtilde: Vec<f64>,
        gamma: Vec<f64>,
        constants: ShiftConstants,
    ) -> Result<Self> {
        let n = grid.len();
        if v.len() != n || vtilde.len() != n || gamma.len() != n {
            return Err(Error::LengthMismatch(format!(
                "grid {n}, V {}, Vtilde {}, gamma {}",
                v.len(),
                vtilde.len(),
                gamma.len()
            )));
        }
        if n == 0 {
            return Err(Error::TooFewPoints { need: 1, got: 0 });
        }
        check_increasing(&grid)?;
        Ok(Self { grid, v, vtilde, gamma, constants })
    }

    /// Samples the general closed forms at every grid point.
    pub fn from_beta(beta: &dyn BetaProvider, constants: ShiftConstants, grid: &[f64]) -> Result<Self> {
        let mut v = Vec::with_capacity(grid.len());
        let mut vt = Vec::with_capacity(grid.len());
        let mut g = Vec::with_capacity(grid.len());
        for &x in grid {
            let j = beta.jet(x)?;
            v.push(potential_from_jet(&j, constants, x)?);
            vt.push(partner_from_jet(&j, constants, x)?);
            g.push(gamma_from_jet(&j, constants, x)?);
        }
        Self::new(grid.to_vec(), v, vt, g, constants)
    }

    /// Oscillator triple for a `β` that solves the oscillator `β`-equation.
    ///
    /// With `V = x²`, `c = 1`, `δ = 4` the first two intertwining constraints
    /// give `Ṽ = x² + 2β'` and `γ = (β² - β' - 2x² - 4)/2` without any division
    /// by `β`, so the triple stays finite where `β` changes sign.
    pub fn oscillator(beta: &dyn BetaProvider, grid: &[f64]) -> Result<Self> {
        let k = ShiftConstants::OSCILLATOR;
        let mut v = Vec::with_capacity(grid.len());
        let mut vt = Vec::with_capacity(grid.len());
        let mut g = Vec::with_capacity(grid.len());
        for &x in grid {
            let j = beta.jet(x)?;
            let base = x * x;
            v.push(base);
            vt.push(base + 2.0 * j.dbeta);
            g.push(0.5 * (j.beta * j.beta - j.dbeta - 2.0 * base - k.delta));
        }
        Self::new(grid.to_vec(), v, vt, g, k)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Resamples onto `grid`; arrays are reused when the grids coincide.
    pub(crate) fn resample(&self, grid: &[f64]) -> Result<Self> {
        let same = grid.len() == self.grid.len()
            && grid
                .iter()
                .zip(&self.grid)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        if same {
            return Ok(self.clone());
        }
        let lo = self.grid[0];
        let hi = self.grid[self.grid.len() - 1];
        if let Some(&x) = grid.iter().find(|&&x| x < lo || x > hi) {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        let spline = |y: &[f64]| -> Result<Vec<f64>> {
            let s = CubicSpline::new(&self.grid, y, SplineEnd::Natural)?;
            Ok(grid.iter().map(|&x| s.eval(x)).collect())
        };
        Self::new(
            grid.to_vec(),
            spline(&self.v)?,
            spline(&self.vtilde)?,
            spline(&self.gamma)?,
            self.constants,
        )
    }
}

/// Sup-norms of the three intertwining constraints over a triple's grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintResiduals {
    /// `Ṽ - V - 2β'`
    pub partner_shift: f64,
    /// `2V + δ - (β² - 2γ - β')`
    pub gamma_relation: f64,
    /// `V'' + βV' - (2γβ' - γ'')`, interior points only.
    pub potential_ode: f64,
}

impl ConstraintResiduals {
    pub fn max(&self) -> f64 {
        self.partner_shift.max(self.gamma_relation).max(self.potential_ode)
    }
}

/// Evaluates the three intertwining constraints on the triple's grid.
///
/// `V'`, `V''` and `γ''` come from three-point finite differences of the
/// sampled arrays (second order on uniform grids); `β`, `β'` from `beta`.
pub fn constraint_residuals(
    triple: &PotentialTriple,
    beta: &dyn BetaProvider,
    k: ShiftConstants,
) -> Result<ConstraintResiduals> {
    let n = triple.len();
    if n < 5 {
        return Err(Error::TooFewPoints { need: 5, got: n });
    }
    let x = &triple.grid;
    let jets = x.iter().map(|&t| beta.jet(t)).collect::<Result<Vec<_>>>()?;

    let mut out = ConstraintResiduals { partner_shift: 0.0, gamma_relation: 0.0, potential_ode: 0.0 };
    for i in 0..n {
        let j = &jets[i];
        let shift = triple.vtilde[i] - triple.v[i] - 2.0 * j.dbeta;
        let rel = 2.0 * triple.v[i] + k.delta - (j.beta * j.beta - 2.0 * triple.gamma[i] - j.dbeta);
        out.partner_shift = out.partner_shift.max(shift.abs());
        out.gamma_relation = out.gamma_relation.max(rel.abs());
    }
    for i in 1..n - 1 {
        let h0 = x[i] - x[i - 1];
        let h1 = x[i + 1] - x[i];
        let (dv, ddv) = three_point(h0, h1, triple.v[i - 1], triple.v[i], triple.v[i + 1]);
        let (_, ddg) = three_point(h0, h1, triple.gamma[i - 1], triple.gamma[i], triple.gamma[i + 1]);
        let j = &jets[i];
        let r = ddv + j.beta * dv - (2.0 * triple.gamma[i] * j.dbeta - ddg);
        out.potential_ode = out.potential_ode.max(r.abs());
    }
    Ok(out)
}

/// First and second derivative at the middle of three points spaced `h0`, `h1`.
fn three_point(h0: f64, h1: f64, f0: f64, f1: f64, f2: f64) -> (f64, f64) {
    let s = h0 + h1;
    let d1 = -h1 / (h0 * s) * f0 + (h1 - h0) / (h0 * h1) * f1 + h0 / (h1 * s) * f2;
    let d2 = 2.0 * (f0 / (h0 * s) - f1 / (h0 * h1) + f2 / (h1 * s));
    (d1, d2)
}
