//! Dormand–Prince 5(4) integration of the `β`-equation as the first-order
//! system `y = (β, β')`, `y' = (β', β''(x, β, β'))`.

use super::{numerator, rhs_with_floor, BetaSolution, InitialPoint, Sample, Side, SolutionStatus};
use crate::{Result, ScanConfig};

type State = [f64; 2];

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const INITIAL_STEP: f64 = 1e-3;
const MAX_STEPS: usize = 2_000_000;

/// `|β'²/2 - 2|` below this at `β(0) = 0` counts as a removable 0/0.
const REMOVABLE_TOL: f64 = 1e-8;

enum SweepEnd {
    Completed,
    Singular(f64),
}

struct Sweep {
    samples: Vec<Sample>,
    end: SweepEnd,
}

fn derivative(x: f64, y: &State, floor: f64) -> Option<State> {
    let dd = rhs_with_floor(x, y[0], y[1], floor).ok()?;
    dd.is_finite().then_some([y[1], dd])
}

fn sweep(x0: f64, y0: State, f0: State, target: f64, cfg: &ScanConfig) -> Sweep {
    let dir = (target - x0).signum();
    let mut x = x0;
    let mut y = y0;
    let mut k1 = f0;
    let mut h = INITIAL_STEP.min(cfg.max_step);
    let mut samples = vec![Sample { x, beta: y[0], dbeta: y[1], ddbeta: f0[1] }];
    let span = (target - x0).abs();

    for _ in 0..MAX_STEPS {
        let remaining = (target - x).abs();
        if remaining <= 4.0 * f64::EPSILON * span.max(1.0) {
            return Sweep { samples, end: SweepEnd::Completed };
        }
        let last = h >= remaining;
        let step = if last { remaining } else { h };
        let hs = dir * step;

        let mut k = [[0.0; 2]; 7];
        k[0] = k1;
        let mut failed = false;
        let mut y_new = y;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += hs * A[s][j] * kj[0];
                ys[1] += hs * A[s][j] * kj[1];
            }
            if s == 6 {
                y_new = ys;
            }
            match derivative(x + C[s] * hs, &ys, cfg.beta_floor) {
                Some(d) => k[s] = d,
                None => {
                    failed = true;
                    break;
                }
            }
        }

        let err = if failed {
            f64::INFINITY
        } else {
            let mut worst = 0.0f64;
            for i in 0..2 {
                let e: f64 = (0..7).map(|s| E[s] * k[s][i]).sum::<f64>() * hs;
                let scale = cfg.atol + cfg.rtol * y[i].abs().max(y_new[i].abs());
                worst = worst.max(e.abs() / scale);
            }
            if worst.is_finite() { worst } else { f64::INFINITY }
        };

        if err <= 1.0 {
            x = if last { target } else { x + hs };
            y = y_new;
            k1 = k[6];
            samples.push(Sample { x, beta: y[0], dbeta: y[1], ddbeta: k1[1] });
            if y[0].abs() < cfg.beta_floor || y[1].abs() > cfg.blowup_cap {
                return Sweep { samples, end: SweepEnd::Singular(x) };
            }
            let factor = if err == 0.0 { MAX_FACTOR } else { (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR) };
            h = (step * factor).min(cfg.max_step);
        } else {
            let factor = if err.is_finite() { (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, 1.0) } else { 0.5 };
            h = step * factor;
        }
        if h < cfg.step_floor {
            return Sweep { samples, end: SweepEnd::Singular(x) };
        }
    }
    Sweep { samples, end: SweepEnd::Singular(x) }
}

/// Integrates the `β`-equation from `p` over `[-x_max, x_max]`.
///
/// Two sweeps run outward from `x = 0`. A sweep ends early, and the solution
/// is marked singular, when `|β|` drops below `beta_floor`, `|β'|` exceeds
/// `blowup_cap`, or the adaptive step falls below `step_floor`.
///
/// When `|β(0)| < beta_floor` the equation is 0/0 at the origin. If the
/// numerator vanishes there too (`β'(0) = ±2`) the sweeps start at `±series_eps`
/// from the odd series `β = a x + c x³` with `a = β'(0)`, `c = (2a² + 4a)/3`;
/// otherwise the point is singular at `x = 0`.
pub fn integrate(p: InitialPoint, cfg: &ScanConfig) -> Result<BetaSolution> {
    cfg.validate_integration()?;
    let fp = cfg.fingerprint();
    let floor = cfg.beta_floor;

    let (right_start, left_start) = if p.beta0.abs() >= floor {
        let y0 = [p.beta0, p.dbeta0];
        (Some((0.0, y0)), Some((0.0, y0)))
    } else if (numerator(0.0, 0.0, p.dbeta0)).abs() <= REMOVABLE_TOL {
        let a = p.dbeta0;
        let c = (2.0 * a * a + 4.0 * a) / 3.0;
        let e = cfg.series_eps;
        let b = a * e + c * e * e * e;
        let db = a + 3.0 * c * e * e;
        (Some((e, [b, db])), Some((-e, [-b, db])))
    } else {
        (None, None)
    };

    let (Some((xr, yr)), Some((xl, yl))) = (right_start, left_start) else {
        let s = Sample { x: 0.0, beta: p.beta0, dbeta: p.dbeta0, ddbeta: f64::NAN };
        return BetaSolution::with_floor(
            vec![s],
            SolutionStatus::Singular { x_sing: 0.0, side: Side::Right },
            p,
            fp,
            floor,
        );
    };

    let start = |x: f64, y: State| derivative(x, &y, floor);
    let (right, left) = match (start(xr, yr), start(xl, yl)) {
        (Some(fr), Some(fl)) => (sweep(xr, yr, fr, cfg.x_max, cfg), sweep(xl, yl, fl, -cfg.x_max, cfg)),
        _ => unreachable!("start points satisfy the floor"),
    };

    let status = match (&left.end, &right.end) {
        (SweepEnd::Completed, SweepEnd::Completed) => SolutionStatus::Regular,
        (SweepEnd::Singular(xl), SweepEnd::Completed) => SolutionStatus::Singular { x_sing: *xl, side: Side::Left },
        (SweepEnd::Completed, SweepEnd::Singular(xr)) => SolutionStatus::Singular { x_sing: *xr, side: Side::Right },
        (SweepEnd::Singular(xl), SweepEnd::Singular(xr)) => {
            if xl.abs() < xr.abs() {
                SolutionStatus::Singular { x_sing: *xl, side: Side::Left }
            } else {
                SolutionStatus::Singular { x_sing: *xr, side: Side::Right }
            }
        }
    };

    let mut samples: Vec<Sample> = left.samples.into_iter().rev().collect();
    let skip = usize::from(xr == xl);
    samples.extend(right.samples.into_iter().skip(skip));
    BetaSolution::with_floor(samples, status, p, fp, floor)
}
