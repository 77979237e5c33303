//! Interpolation on strictly increasing abscissas: cubic splines and
//! two-point cubic Hermite segments.

use crate::{Error, Result};

/// Boundary condition for [`CubicSpline`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplineEnd {
    /// Zero second derivative at both ends.
    Natural,
    /// Prescribed first derivatives at the first and last knot.
    Clamped { start: f64, end: f64 },
}

/// Interpolating cubic spline stored as knot values plus second-derivative
/// moments.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: &[f64], y: &[f64], end: SplineEnd) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch(format!(
                "{} abscissas vs {} values",
                x.len(),
                y.len()
            )));
        }
        if x.len() < 3 {
            return Err(Error::TooFewPoints { need: 3, got: x.len() });
        }
        check_increasing(x)?;

        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let slope: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = 6.0 * (slope[i] - slope[i - 1]);
        }
        match end {
            SplineEnd::Natural => {
                diag[0] = 1.0;
                diag[n - 1] = 1.0;
            }
            SplineEnd::Clamped { start, end } => {
                diag[0] = 2.0 * h[0];
                sup[0] = h[0];
                rhs[0] = 6.0 * (slope[0] - start);
                sub[n - 1] = h[n - 2];
                diag[n - 1] = 2.0 * h[n - 2];
                rhs[n - 1] = 6.0 * (end - slope[n - 2]);
            }
        }
        let m = solve_tridiagonal(&sub, &diag, &sup, &rhs);
        Ok(Self {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value and first derivative at `t`; `None` outside the knot range.
    pub fn eval_with_derivative(&self, t: f64) -> Option<(f64, f64)> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&t) {
            return None;
        }
        let i = segment_index(&self.x, t);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let (a, b) = (x1 - t, t - x0);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let c0 = self.y[i] / h - m0 * h / 6.0;
        let c1 = self.y[i + 1] / h - m1 * h / 6.0;
        let value = m0 * a * a * a / (6.0 * h) + m1 * b * b * b / (6.0 * h) + c0 * a + c1 * b;
        let deriv = -m0 * a * a / (2.0 * h) + m1 * b * b / (2.0 * h) - c0 + c1;
        Some((value, deriv))
    }

    /// Spline value at `t`, NaN outside the knot range.
    pub fn eval(&self, t: f64) -> f64 {
        self.eval_with_derivative(t).map_or(f64::NAN, |(v, _)| v)
    }

    /// Spline first derivative at `t`, NaN outside the knot range.
    pub fn derivative(&self, t: f64) -> f64 {
        self.eval_with_derivative(t).map_or(f64::NAN, |(_, d)| d)
    }
}

/// Cubic Hermite interpolation on `[x0, x1]` from end values and slopes.
/// Returns the interpolant and its derivative at `t`.
#[allow(clippy::too_many_arguments)]
pub fn hermite(x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64, t: f64) -> (f64, f64) {
    let h = x1 - x0;
    let s = (t - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let value = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    let dh00 = 6.0 * s2 - 6.0 * s;
    let dh10 = 3.0 * s2 - 4.0 * s + 1.0;
    let dh01 = -6.0 * s2 + 6.0 * s;
    let dh11 = 3.0 * s2 - 2.0 * s;
    let deriv = (dh00 * y0 + dh01 * y1) / h + dh10 * d0 + dh11 * d1;
    (value, deriv)
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (a + b)];
    }
    let h = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + i as f64 * h })
        .collect()
}

pub(crate) fn check_increasing(x: &[f64]) -> Result<()> {
    match x.windows(2).position(|w| w[1] <= w[0] || !w[0].is_finite()) {
        Some(i) => Err(Error::NonMonotoneGrid(i + 1)),
        None => Ok(()),
    }
}

/// Index `i` with `x[i] <= t <= x[i+1]`, clamped to valid segments.
pub(crate) fn segment_index(x: &[f64], t: f64) -> usize {
    let p = x.partition_point(|&v| v <= t);
    p.saturating_sub(1).min(x.len() - 2)
}

/// Thomas algorithm for a tridiagonal system; `sub[0]` and `sup[n-1]` unused.
pub(crate) fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = if i < n - 1 { sup[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut out = vec![0.0; n];
    out[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        out[i] = d[i] - c[i] * out[i + 1];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_cubic_when_clamped() {
        let f = |x: f64| x * x * x - 2.0 * x + 1.0;
        let df = |x: f64| 3.0 * x * x - 2.0;
        let x: Vec<f64> = vec![-1.0, -0.4, 0.1, 0.3, 0.9, 1.6, 2.0];
        let y: Vec<f64> = x.iter().map(|&t| f(t)).collect();
        let s = CubicSpline::new(&x, &y, SplineEnd::Clamped { start: df(-1.0), end: df(2.0) }).unwrap();
        for k in 0..=60 {
            let t = -1.0 + 3.0 * k as f64 / 60.0;
            let (v, d) = s.eval_with_derivative(t).unwrap();
            assert!((v - f(t)).abs() < 1e-12, "t={t}");
            assert!((d - df(t)).abs() < 1e-11, "t={t}");
        }
    }

    #[test]
    fn natural_spline_interpolates_knots() {
        let x = uniform_grid(0.0, 3.0, 31);
        let y: Vec<f64> = x.iter().map(|t| t.sin()).collect();
        let s = CubicSpline::new(&x, &y, SplineEnd::Natural).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert!((s.eval(*xi) - yi).abs() < 1e-14);
        }
        assert!((s.eval(1.234) - 1.234f64.sin()).abs() < 1e-5);
        assert!(s.eval(3.5).is_nan());
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(matches!(
            CubicSpline::new(&[0.0, 1.0, 1.0], &[0.0; 3], SplineEnd::Natural),
            Err(Error::NonMonotoneGrid(2))
        ));
        assert!(CubicSpline::new(&[0.0, 1.0], &[0.0; 2], SplineEnd::Natural).is_err());
    }

    #[test]
    fn hermite_exact_on_cubics() {
        let f = |x: f64| 2.0 * x * x * x - x + 0.5;
        let df = |x: f64| 6.0 * x * x - 1.0;
        let (a, b) = (0.3, 0.8);
        for &t in &[0.3, 0.41, 0.55, 0.8] {
            let (v, d) = hermite(a, b, f(a), f(b), df(a), df(b), t);
            assert!((v - f(t)).abs() < 1e-14);
            assert!((d - df(t)).abs() < 1e-13);
        }
    }
}
