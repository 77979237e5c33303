use super::{rhs_with_floor, InitialPoint, DEFAULT_BETA_FLOOR};
use crate::interp::hermite;
use crate::io::{fmt_f64, CsvDoc};
use crate::operators::{BetaJet, BetaKind, BetaProvider};
use crate::{Error, Result, VERSION};

/// One accepted integration step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub beta: f64,
    pub dbeta: f64,
    /// `β''` from the equation at this sample; used as the slope of the
    /// dense output for `β'`.
    pub ddbeta: f64,
}

/// Which sweep ended a singular solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolutionStatus {
    /// Both sweeps reached the window ends.
    Regular,
    Singular { x_sing: f64, side: Side },
}

impl SolutionStatus {
    pub fn is_regular(&self) -> bool {
        matches!(self, SolutionStatus::Regular)
    }

    fn render(&self) -> String {
        match self {
            SolutionStatus::Regular => "regular".into(),
            SolutionStatus::Singular { x_sing, side } => {
                let side = match side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                format!("singular x_sing={} side={side}", fmt_f64(*x_sing))
            }
        }
    }

    fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, msg: format!("bad status `{text}`") };
        if text == "regular" {
            return Ok(SolutionStatus::Regular);
        }
        let rest = text.strip_prefix("singular").ok_or_else(bad)?;
        let mut x_sing = None;
        let mut side = None;
        for part in rest.split_whitespace() {
            match part.split_once('=') {
                Some(("x_sing", v)) => x_sing = v.parse::<f64>().ok(),
                Some(("side", "left")) => side = Some(Side::Left),
                Some(("side", "right")) => side = Some(Side::Right),
                _ => return Err(bad()),
            }
        }
        Ok(SolutionStatus::Singular { x_sing: x_sing.ok_or_else(bad)?, side: side.ok_or_else(bad)? })
    }
}

/// A sampled trajectory of the `β`-equation.
///
/// Samples are stored in ascending `x`: the left sweep reversed, then the
/// right sweep. Between samples `β` and `β'` are cubic Hermite interpolants
/// using `β'` and `β''` as slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaSolution {
    samples: Vec<Sample>,
    status: SolutionStatus,
    initial: InitialPoint,
    config_fingerprint: String,
    beta_floor: f64,
}

impl BetaSolution {
    pub fn from_samples(
        samples: Vec<Sample>,
        status: SolutionStatus,
        initial: InitialPoint,
        config_fingerprint: impl Into<String>,
    ) -> Result<Self> {
        Self::with_floor(samples, status, initial, config_fingerprint.into(), DEFAULT_BETA_FLOOR)
    }

    pub(crate) fn with_floor(
        samples: Vec<Sample>,
        status: SolutionStatus,
        initial: InitialPoint,
        config_fingerprint: String,
        beta_floor: f64,
    ) -> Result<Self> {
        if samples.is_empty() || (samples.len() < 2 && status.is_regular()) {
            return Err(Error::TooFewPoints { need: 2, got: samples.len() });
        }
        if let Some(i) = samples.windows(2).position(|w| w[1].x <= w[0].x) {
            return Err(Error::NonMonotoneGrid(i + 1));
        }
        Ok(Self { samples, status, initial, config_fingerprint, beta_floor })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn status(&self) -> &SolutionStatus {
        &self.status
    }

    pub fn is_regular(&self) -> bool {
        self.status.is_regular()
    }

    pub fn initial(&self) -> InitialPoint {
        self.initial
    }

    pub fn config_fingerprint(&self) -> &str {
        &self.config_fingerprint
    }

    /// `[x_first, x_last]` covered by the samples.
    pub fn span(&self) -> (f64, f64) {
        (self.samples[0].x, self.samples[self.samples.len() - 1].x)
    }

    /// Dense output `(β, β', d/dx of the β' interpolant)` at `x`.
    pub fn state_at(&self, x: f64) -> Result<(f64, f64, f64)> {
        let (lo, hi) = self.span();
        if !(lo..=hi).contains(&x) {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        if self.samples.len() == 1 {
            let s = &self.samples[0];
            return Ok((s.beta, s.dbeta, s.ddbeta));
        }
        let i = self
            .samples
            .partition_point(|s| s.x <= x)
            .saturating_sub(1)
            .min(self.samples.len() - 2);
        let (a, b) = (&self.samples[i], &self.samples[i + 1]);
        let (beta, _) = hermite(a.x, b.x, a.beta, b.beta, a.dbeta, b.dbeta, x);
        let (dbeta, slope) = if a.ddbeta.is_finite() && b.ddbeta.is_finite() {
            hermite(a.x, b.x, a.dbeta, b.dbeta, a.ddbeta, b.ddbeta, x)
        } else {
            let s = (b.dbeta - a.dbeta) / (b.x - a.x);
            (a.dbeta + s * (x - a.x), s)
        };
        Ok((beta, dbeta, slope))
    }

    /// `|β'(end) + 2|` at both window ends; small for trajectories that lock
    /// onto the `-2x` asymptote.
    pub fn tail_mismatch(&self) -> f64 {
        let first = &self.samples[0];
        let last = &self.samples[self.samples.len() - 1];
        (first.dbeta + 2.0).abs().max((last.dbeta + 2.0).abs())
    }

    /// CSV with columns `x,beta,dbeta`; the header carries the fingerprint,
    /// status and initial point.
    pub fn to_csv(&self) -> String {
        let mut doc = CsvDoc::new(&["x", "beta", "dbeta"])
            .with_meta("tool", format!("sususy {VERSION}"))
            .with_meta("fingerprint", self.config_fingerprint.clone())
            .with_meta("status", self.status.render())
            .with_meta("beta0", fmt_f64(self.initial.beta0))
            .with_meta("dbeta0", fmt_f64(self.initial.dbeta0))
            .with_meta("beta_floor", fmt_f64(self.beta_floor));
        for s in &self.samples {
            doc.push_row(vec![fmt_f64(s.x), fmt_f64(s.beta), fmt_f64(s.dbeta)]);
        }
        doc.render()
    }

    /// Inverse of [`to_csv`](Self::to_csv); `β''` is recomputed from the
    /// equation.
    pub fn from_csv(text: &str) -> Result<Self> {
        let doc = CsvDoc::parse(text)?;
        let meta_f64 = |key: &str| -> Result<f64> {
            doc.meta(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("missing or bad `{key}` header") })
        };
        let status = SolutionStatus::parse(
            doc.meta("status")
                .ok_or_else(|| Error::Parse { line: 0, msg: "missing `status` header".into() })?,
        )?;
        let floor = meta_f64("beta_floor").unwrap_or(DEFAULT_BETA_FLOOR);
        let initial = InitialPoint::new(meta_f64("beta0")?, meta_f64("dbeta0")?);
        let fingerprint = doc.meta("fingerprint").unwrap_or("").to_string();
        let x = doc.float_column("x")?;
        let b = doc.float_column("beta")?;
        let db = doc.float_column("dbeta")?;
        let samples = (0..x.len())
            .map(|i| Sample {
                x: x[i],
                beta: b[i],
                dbeta: db[i],
                ddbeta: rhs_with_floor(x[i], b[i], db[i], floor).unwrap_or(f64::NAN),
            })
            .collect();
        Self::with_floor(samples, status, initial, fingerprint, floor)
    }
}

impl BetaProvider for BetaSolution {
    fn jet(&self, x: f64) -> Result<BetaJet> {
        let (beta, dbeta, slope) = self.state_at(x)?;
        let ddbeta = rhs_with_floor(x, beta, dbeta, self.beta_floor).unwrap_or(slope);
        Ok(BetaJet { beta, dbeta, ddbeta })
    }

    fn kind(&self) -> BetaKind {
        BetaKind::Interpolated
    }

    fn domain(&self) -> (f64, f64) {
        self.span()
    }
}
