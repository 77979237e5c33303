use super::{BetaProvider, PotentialTriple, ShiftConstants};
use crate::interp::uniform_grid;
use crate::{Error, Result};

/// `|ψ|` at the window ends must stay below this fraction of `max |ψ|`.
pub const BOUNDARY_FLOOR: f64 = 1e-8;

/// Smooth, rapidly decaying probe functions for operator identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    Gaussian { center: f64, width: f64 },
    /// `H_n(s) e^{-s²/2}` with `s = (x - center)/width` and `H_n` the
    /// physicists' Hermite polynomial.
    HermiteGaussian { order: u32, center: f64, width: f64 },
}

impl TestFunction {
    pub fn gaussian() -> Self {
        TestFunction::Gaussian { center: 0.0, width: 1.0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            TestFunction::Gaussian { center, width } => {
                let s = (x - center) / width;
                (-0.5 * s * s).exp()
            }
            TestFunction::HermiteGaussian { order, center, width } => {
                let s = (x - center) / width;
                hermite_poly(order, s) * (-0.5 * s * s).exp()
            }
        }
    }

    pub fn label(&self) -> String {
        match *self {
            TestFunction::Gaussian { center, width } => format!("gaussian(center={center}, width={width})"),
            TestFunction::HermiteGaussian { order, center, width } => {
                format!("hermite-gaussian(order={order}, center={center}, width={width})")
            }
        }
    }

    /// Hermite–Gaussians of orders 0..=4 at widths 0.6, 0.8 and 1.0.
    pub fn corpus() -> Vec<TestFunction> {
        let mut out = Vec::new();
        for &width in &[0.6, 0.8, 1.0] {
            for order in 0..=4 {
                out.push(TestFunction::HermiteGaussian { order, center: 0.0, width });
            }
        }
        out
    }
}

fn hermite_poly(n: u32, s: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * s);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * s * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Relative L² residual of a discretized operator identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorResidual {
    pub value: f64,
    /// False when the probe function is not negligible at the window ends.
    pub reliable: bool,
}

struct Discretization {
    h: f64,
    psi: Vec<f64>,
    beta: Vec<f64>,
    dbeta: Vec<f64>,
    triple: PotentialTriple,
    reliable: bool,
}

fn discretize(
    triple: &PotentialTriple,
    beta: &dyn BetaProvider,
    psi: &TestFunction,
    window: (f64, f64),
    n: usize,
) -> Result<Discretization> {
    if n < 5 {
        return Err(Error::TooFewPoints { need: 5, got: n });
    }
    let (a, b) = window;
    if !(a < b) {
        return Err(Error::InvalidConfig(format!("empty window [{a}, {b}]")));
    }
    let grid = uniform_grid(a, b, n);
    let h = (b - a) / (n - 1) as f64;
    let triple = triple.resample(&grid)?;
    let psi_v: Vec<f64> = grid.iter().map(|&x| psi.eval(x)).collect();
    let peak = psi_v.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let reliable = psi_v[0].abs().max(psi_v[n - 1].abs()) <= BOUNDARY_FLOOR * peak;
    let mut beta_v = Vec::with_capacity(n);
    let mut dbeta_v = Vec::with_capacity(n);
    for &x in &grid {
        let j = beta.jet(x)?;
        beta_v.push(j.beta);
        dbeta_v.push(j.dbeta);
    }
    Ok(Discretization { h, psi: psi_v, beta: beta_v, dbeta: dbeta_v, triple, reliable })
}

// Three-point stencils with zero ghost values outside the window.
fn second_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let inv = 1.0 / (h * h);
    (0..n)
        .map(|i| {
            let l = if i > 0 { f[i - 1] } else { 0.0 };
            let r = if i + 1 < n { f[i + 1] } else { 0.0 };
            (l - 2.0 * f[i] + r) * inv
        })
        .collect()
}

fn first_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|i| {
            let l = if i > 0 { f[i - 1] } else { 0.0 };
            let r = if i + 1 < n { f[i + 1] } else { 0.0 };
            (r - l) / (2.0 * h)
        })
        .collect()
}

impl Discretization {
    /// `A† f = f'' + β f' + γ f`
    fn a_dagger(&self, f: &[f64]) -> Vec<f64> {
        let d2 = second_derivative(f, self.h);
        let d1 = first_derivative(f, self.h);
        (0..f.len())
            .map(|i| d2[i] + self.beta[i] * d1[i] + self.triple.gamma[i] * f[i])
            .collect()
    }

    /// `A f = f'' - β f' + (γ - β') f`, the formal adjoint of `A†`.
    fn a(&self, f: &[f64]) -> Vec<f64> {
        let d2 = second_derivative(f, self.h);
        let d1 = first_derivative(f, self.h);
        (0..f.len())
            .map(|i| d2[i] - self.beta[i] * d1[i] + (self.triple.gamma[i] - self.dbeta[i]) * f[i])
            .collect()
    }

    /// `-f'' + V f`
    fn hamiltonian(&self, f: &[f64], v: &[f64]) -> Vec<f64> {
        let d2 = second_derivative(f, self.h);
        (0..f.len()).map(|i| -d2[i] + v[i] * f[i]).collect()
    }

    fn relative(&self, lhs: &[f64], rhs: &[f64]) -> f64 {
        let num: f64 = lhs.iter().zip(rhs).map(|(a, b)| (a - b) * (a - b)).sum();
        let den: f64 = self.psi.iter().map(|p| p * p).sum();
        (num / den).sqrt()
    }
}

/// `‖(H̃A† - A†H)ψ‖₂ / ‖ψ‖₂` on a uniform `n`-point grid over `window`.
pub fn intertwining_residual(
    triple: &PotentialTriple,
    beta: &dyn BetaProvider,
    psi: &TestFunction,
    window: (f64, f64),
    n: usize,
) -> Result<OperatorResidual> {
    let d = discretize(triple, beta, psi, window, n)?;
    let lhs = d.hamiltonian(&d.a_dagger(&d.psi), &d.triple.vtilde);
    let rhs = d.a_dagger(&d.hamiltonian(&d.psi, &d.triple.v));
    Ok(OperatorResidual { value: d.relative(&lhs, &rhs), reliable: d.reliable })
}

/// `‖(AA† - (H + δ/2)² + c)ψ‖₂ / ‖ψ‖₂` on a uniform `n`-point grid.
pub fn factorization_residual(
    triple: &PotentialTriple,
    beta: &dyn BetaProvider,
    k: ShiftConstants,
    psi: &TestFunction,
    window: (f64, f64),
    n: usize,
) -> Result<OperatorResidual> {
    let d = discretize(triple, beta, psi, window, n)?;
    let lhs = d.a(&d.a_dagger(&d.psi));
    let shift = |f: &[f64]| -> Vec<f64> {
        let hf = d.hamiltonian(f, &d.triple.v);
        hf.iter().zip(f).map(|(a, b)| a + 0.5 * k.delta * b).collect()
    };
    let rhs: Vec<f64> = shift(&shift(&d.psi))
        .iter()
        .zip(&d.psi)
        .map(|(a, p)| a - k.c * p)
        .collect();
    Ok(OperatorResidual { value: d.relative(&lhs, &rhs), reliable: d.reliable })
}
