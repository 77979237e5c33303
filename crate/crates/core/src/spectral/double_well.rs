use crate::interp::{CubicSpline, SplineEnd};
use crate::{Error, Result};

/// Minima shallower than this fraction of `V_max - V_min` are ignored.
pub const PROMINENCE_FRACTION: f64 = 1e-3;

const MIN_SAMPLES: usize = 101;

/// A local minimum of a sampled potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    /// Vertex of the parabola through the three samples around the minimum.
    pub x: f64,
    /// Potential value at `x`.
    pub value: f64,
    /// Rise needed to leave the well on its lower side.
    pub prominence: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleWellReport {
    /// Ordered by `x`.
    pub minima: Vec<Minimum>,
    /// `min over x₀ of sup_t |V(x₀+t) - V(x₀-t)| / (V_max - V_min)`.
    pub asymmetry: f64,
    /// The `x₀` attaining [`asymmetry`](Self::asymmetry).
    pub best_center: f64,
    pub range: f64,
}

impl DoubleWellReport {
    pub fn is_double_well(&self) -> bool {
        self.minima.len() == 2
    }

    /// `|V(m₁) - V(m₂)|` for a double well.
    pub fn depth_difference(&self) -> Option<f64> {
        match self.minima.as_slice() {
            [a, b] => Some((a.value - b.value).abs()),
            _ => None,
        }
    }
}

/// Finds the prominent local minima of `v` sampled on the uniform grid `x`
/// and scores how far the samples are from being mirror-symmetric about any
/// point.
///
/// Candidate mirror points are every grid point and grid midpoint in the
/// middle half of the interval, plus the midpoint of every pair of minima.
/// For each candidate the comparison runs over the largest interval that fits
/// inside the samples, using a natural spline between samples.
pub fn double_well_analysis(x: &[f64], v: &[f64]) -> Result<DoubleWellReport> {
    if x.len() != v.len() {
        return Err(Error::LengthMismatch(format!("{} abscissas vs {} values", x.len(), v.len())));
    }
    if x.len() < MIN_SAMPLES {
        return Err(Error::TooFewPoints { need: MIN_SAMPLES, got: x.len() });
    }
    if let Some(i) = v.iter().position(|t| !t.is_finite()) {
        return Err(Error::NonFinitePotential { x: x[i], value: v[i] });
    }
    let n = x.len();
    let h = (x[n - 1] - x[0]) / (n - 1) as f64;
    if !(h > 0.0) || x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
        return Err(Error::NonUniformGrid);
    }

    let vmax = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let vmin = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let range = vmax - vmin;
    let minima = find_minima(x, v, range);

    let spline = CubicSpline::new(x, v, SplineEnd::Natural)?;
    let (a, b) = (x[0], x[n - 1]);
    let mut centers: Vec<f64> = (0..2 * n - 1)
        .map(|k| a + 0.5 * h * k as f64)
        .filter(|c| (c - a) >= 0.25 * (b - a) && (b - c) >= 0.25 * (b - a))
        .collect();
    for i in 0..minima.len() {
        for j in i + 1..minima.len() {
            centers.push(0.5 * (minima[i].x + minima[j].x));
        }
    }

    let mut asymmetry = f64::INFINITY;
    let mut best_center = f64::NAN;
    for c in centers {
        let score = mirror_defect(&spline, c, (a, b), h) / range.max(f64::MIN_POSITIVE);
        if score < asymmetry {
            asymmetry = score;
            best_center = c;
        }
    }
    if range == 0.0 {
        asymmetry = 0.0;
    }
    Ok(DoubleWellReport { minima, asymmetry, best_center, range })
}

fn mirror_defect(s: &CubicSpline, c: f64, (a, b): (f64, f64), h: f64) -> f64 {
    let reach = (c - a).min(b - c);
    let steps = (reach / h).floor() as usize;
    (1..=steps)
        .map(|k| {
            let t = k as f64 * h;
            (s.eval(c + t) - s.eval(c - t)).abs()
        })
        .filter(|d| d.is_finite())
        .fold(0.0, f64::max)
}

fn find_minima(x: &[f64], v: &[f64], range: f64) -> Vec<Minimum> {
    let n = v.len();
    let flat = 1e-14 * range;
    let sign = |d: f64| if d > flat { 1 } else if d < -flat { -1 } else { 0 };

    // Interior plateaus bounded by a descent on the left and an ascent on the
    // right.
    let mut out = Vec::new();
    let mut last_dir = 0;
    let mut plateau_start = 0;
    for i in 0..n - 1 {
        match sign(v[i + 1] - v[i]) {
            0 => {}
            -1 => {
                last_dir = -1;
                plateau_start = i + 1;
            }
            _ => {
                if last_dir == -1 {
                    let idx = (plateau_start + i) / 2;
                    let prominence = prominence(v, idx);
                    if prominence >= PROMINENCE_FRACTION * range {
                        let (xm, vm) = vertex(x, v, idx);
                        out.push(Minimum { x: xm, value: vm, prominence });
                    }
                }
                last_dir = 1;
                plateau_start = i + 1;
            }
        }
    }
    out
}

/// Smallest rise over the highest point between `i` and the nearest lower
/// sample on each side (or the interval end).
fn prominence(v: &[f64], i: usize) -> f64 {
    let walk = |iter: &mut dyn Iterator<Item = usize>| {
        let mut top = v[i];
        for j in iter {
            if v[j] < v[i] {
                break;
            }
            top = top.max(v[j]);
        }
        top - v[i]
    };
    let left = walk(&mut (0..i).rev());
    let right = walk(&mut (i + 1..v.len()));
    left.min(right)
}

fn vertex(x: &[f64], v: &[f64], i: usize) -> (f64, f64) {
    if i == 0 || i + 1 >= v.len() {
        return (x[i], v[i]);
    }
    let (y0, y1, y2) = (v[i - 1], v[i], v[i + 1]);
    let curv = y0 - 2.0 * y1 + y2;
    if curv <= 0.0 {
        return (x[i], y1);
    }
    let h = x[i + 1] - x[i];
    let s = 0.5 * (y0 - y2) / curv;
    (x[i] + s * h, y1 - 0.25 * (y0 - y2) * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::uniform_grid;

    fn sample(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
        let x = uniform_grid(a, b, n);
        let v = x.iter().map(|&t| f(t)).collect();
        (x, v)
    }

    #[test]
    fn single_well() {
        let (x, v) = sample(|t| t * t, -5.0, 5.0, 1001);
        let r = double_well_analysis(&x, &v).unwrap();
        assert_eq!(r.minima.len(), 1);
        assert!(r.minima[0].x.abs() < 1e-12);
        assert!(r.asymmetry <= 1e-10, "{}", r.asymmetry);
        assert!(r.best_center.abs() < 1e-12);
    }

    #[test]
    fn symmetric_double_well() {
        let (x, v) = sample(|t| (t * t - 1.0).powi(2), -2.0, 2.0, 801);
        let r = double_well_analysis(&x, &v).unwrap();
        assert!(r.is_double_well());
        // Parabolic vertex on a quartic: O(h²) bias.
        assert!((r.minima[0].x + 1.0).abs() < 1e-4 && (r.minima[1].x - 1.0).abs() < 1e-4, "{r:?}");
        assert!(r.depth_difference().unwrap() < 1e-10);
        assert!(r.asymmetry < 1e-10);
    }

    #[test]
    fn shifted_symmetric_well_found_off_origin() {
        let (x, v) = sample(|t| ((t - 0.5) * (t - 0.5) - 1.0).powi(2), -2.0, 3.0, 1001);
        let r = double_well_analysis(&x, &v).unwrap();
        assert!(r.asymmetry < 1e-8, "{}", r.asymmetry);
        assert!((r.best_center - 0.5).abs() < 1e-9);
    }

    #[test]
    fn tilted_double_well_is_asymmetric() {
        let (x, v) = sample(|t| (t * t - 1.0).powi(2) + 0.3 * t, -2.0, 2.0, 801);
        let r = double_well_analysis(&x, &v).unwrap();
        assert!(r.is_double_well());
        assert!(r.depth_difference().unwrap() > 0.5);
        assert!(r.asymmetry > 0.01, "{}", r.asymmetry);
    }

    #[test]
    fn ripples_below_prominence_are_ignored() {
        let (x, v) = sample(|t| t * t + 1e-5 * (40.0 * t).sin(), -3.0, 3.0, 3001);
        let r = double_well_analysis(&x, &v).unwrap();
        assert_eq!(r.minima.len(), 1);
    }

    #[test]
    fn input_errors() {
        let (x, v) = sample(|t| t, 0.0, 1.0, 50);
        assert!(matches!(double_well_analysis(&x, &v), Err(Error::TooFewPoints { .. })));
        let mut x = uniform_grid(0.0, 1.0, 200);
        x[10] += 1e-3;
        assert!(matches!(double_well_analysis(&x, &vec![0.0; 200]), Err(Error::NonUniformGrid)));
    }
}
