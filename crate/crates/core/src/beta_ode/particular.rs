use crate::operators::{BetaJet, BetaKind, BetaProvider};
use crate::special::{gaussian_integral, HALF_SQRT_PI};
use crate::{Error, Result};

/// Closed-form particular solution `β_p` for a fixed `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticularBeta {
    lambda: f64,
}

impl ParticularBeta {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.abs() > HALF_SQRT_PI) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `g = e^{-x²}/(λ + F(x))`, so that `β_p = -2x - g` and `g' = -g(2x + g)`.
    pub fn correction(&self, x: f64) -> f64 {
        (-x * x).exp() / (self.lambda + gaussian_integral(x))
    }
}

impl BetaProvider for ParticularBeta {
    fn jet(&self, x: f64) -> Result<BetaJet> {
        let g = self.correction(x);
        Ok(BetaJet {
            beta: -2.0 * x - g,
            dbeta: -2.0 + 2.0 * x * g + g * g,
            ddbeta: 2.0 * g - 2.0 * g * (x + g) * (2.0 * x + g),
        })
    }

    fn kind(&self) -> BetaKind {
        BetaKind::ClosedForm
    }
}

/// `β_p(x)` and its first two derivatives.
pub fn beta_particular(lambda: f64, x: f64) -> Result<BetaJet> {
    ParticularBeta::new(lambda)?.jet(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta_ode::equation_lhs;

    #[test]
    fn origin_values() {
        let j = beta_particular(2.0, 0.0).unwrap();
        assert!((j.beta + 0.5).abs() < 1e-15);
        assert!((j.dbeta + 1.75).abs() < 1e-15);
    }

    #[test]
    fn large_lambda_tends_to_ladder() {
        let j = beta_particular(1e12, 1.3).unwrap();
        assert!((j.beta + 2.6).abs() < 1e-11);
        assert!((j.dbeta + 2.0).abs() < 1e-11);
    }

    #[test]
    fn lambda_bound() {
        assert!(matches!(beta_particular(0.8, 0.0), Err(Error::LambdaOutOfRange(_))));
        assert!(beta_particular(-0.8, 0.0).is_err());
        assert!(beta_particular(0.8863, 0.0).is_ok());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let p = ParticularBeta::new(1.5).unwrap();
        let h = 1e-5;
        for &x in &[-3.0, -0.8, 0.0, 0.4, 2.1] {
            let j = p.jet(x).unwrap();
            let (m, q) = (p.jet(x - h).unwrap(), p.jet(x + h).unwrap());
            assert!(((q.beta - m.beta) / (2.0 * h) - j.dbeta).abs() < 1e-8, "x={x}");
            assert!(((q.dbeta - m.dbeta) / (2.0 * h) - j.ddbeta).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn solves_the_beta_equation() {
        for &lambda in &[1.5, 2.0, 5.0, -2.0] {
            let p = ParticularBeta::new(lambda).unwrap();
            for k in 0..=100 {
                let x = -5.0 + 0.1 * k as f64;
                let j = p.jet(x).unwrap();
                let r = equation_lhs(x, j.beta, j.dbeta, j.ddbeta);
                assert!(r.abs() < 1e-9 * (1.0 + x.powi(4)), "λ={lambda} x={x} r={r}");
            }
        }
    }
}
