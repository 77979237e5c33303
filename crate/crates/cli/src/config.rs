//! Run configuration: a flat `key = value` file with `#` comments, overridden
//! by command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use sususy::config::fingerprint_text;
use sususy::io::fmt_f64;
use sususy::ScanConfig;

use crate::error::CliError;

/// Where the `β` function comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum BetaSource {
    /// `β = -2x`
    Minus2x,
    /// The closed-form particular family with the given `λ`.
    Particular { lambda: f64 },
    /// A previously written `beta.csv`.
    Csv(PathBuf),
}

impl BetaSource {
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        if text == "minus2x" {
            return Ok(BetaSource::Minus2x);
        }
        if let Some(rest) = text.strip_prefix("eq17:") {
            let v = rest
                .strip_prefix("lambda=")
                .ok_or_else(|| format!("expected `eq17:lambda=VALUE`, got `{text}`"))?;
            let lambda = v.parse().map_err(|_| format!("bad lambda `{v}`"))?;
            return Ok(BetaSource::Particular { lambda });
        }
        if let Some(path) = text.strip_prefix("csv:") {
            if path.is_empty() {
                return Err("empty path in `csv:`".into());
            }
            return Ok(BetaSource::Csv(PathBuf::from(path)));
        }
        Err(format!("unknown seed source `{text}` (expected minus2x, eq17:lambda=V or csv:PATH)"))
    }
}

impl fmt::Display for BetaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaSource::Minus2x => write!(f, "minus2x"),
            BetaSource::Particular { lambda } => write!(f, "eq17:lambda={lambda}"),
            BetaSource::Csv(p) => write!(f, "csv:{}", p.display()),
        }
    }
}

/// Everything a subcommand needs, fully resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scan: ScanConfig,
    pub seed_source: BetaSource,
    /// `λ` of the Abraham–Moses comparison potential.
    pub lambda: f64,
    pub beta0: f64,
    /// `β'(0)` values; the first one is used where a single point is needed.
    pub dbeta0: Vec<f64>,
    pub kmax: usize,
    pub spectral_domain: (f64, f64),
    pub spectral_n: usize,
    pub derive_window: (f64, f64),
    pub derive_points: usize,
    /// Grid size of the operator residual checks on `[-8, 8]`.
    pub operator_n: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scan: ScanConfig::default(),
            seed_source: BetaSource::Minus2x,
            lambda: 2.0,
            beta0: -0.7,
            dbeta0: vec![-2.6, -2.0, -1.51, -1.0, -0.4],
            kmax: 6,
            spectral_domain: (-8.0, 8.0),
            spectral_n: 4000,
            derive_window: (-5.0, 5.0),
            derive_points: 1000,
            operator_n: 4001,
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, String> {
    v.trim().parse::<f64>().map_err(|_| format!("bad number `{v}` for `{key}`"))
}

fn parse_usize(key: &str, v: &str) -> Result<usize, String> {
    v.trim().parse::<usize>().map_err(|_| format!("bad integer `{v}` for `{key}`"))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, String> {
    let v = v.trim();
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|s| parse_f64(key, s)).collect()
}

fn parse_pair(key: &str, v: &str) -> Result<(f64, f64), String> {
    match parse_list(key, v)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("`{key}` needs two comma-separated numbers, got `{v}`")),
    }
}

/// `"AxB"` → `(A, B)`.
pub fn parse_grid(v: &str) -> Result<(usize, usize), String> {
    let (a, b) = v
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("grid must look like `45x60`, got `{v}`"))?;
    Ok((parse_usize("grid", a)?, parse_usize("grid", b)?))
}

/// `"bmin,bmax,dbmin,dbmax"`.
pub fn parse_window(v: &str) -> Result<[f64; 4], String> {
    let vals = parse_list("window", v)?;
    <[f64; 4]>::try_from(vals.as_slice())
        .map_err(|_| format!("window needs four comma-separated numbers, got `{v}`"))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let s = &mut self.scan;
        match key {
            "x_max" => s.x_max = parse_f64(key, value)?,
            "rtol" => s.rtol = parse_f64(key, value)?,
            "atol" => s.atol = parse_f64(key, value)?,
            "beta_floor" => s.beta_floor = parse_f64(key, value)?,
            "blowup_cap" => s.blowup_cap = parse_f64(key, value)?,
            "step_floor" => s.step_floor = parse_f64(key, value)?,
            "max_step" => s.max_step = parse_f64(key, value)?,
            "series_eps" => s.series_eps = parse_f64(key, value)?,
            "beta_min" => s.beta_min = parse_f64(key, value)?,
            "beta_max" => s.beta_max = parse_f64(key, value)?,
            "dbeta_min" => s.dbeta_min = parse_f64(key, value)?,
            "dbeta_max" => s.dbeta_max = parse_f64(key, value)?,
            "n_beta" => s.n_beta = parse_usize(key, value)?,
            "n_dbeta" => s.n_dbeta = parse_usize(key, value)?,
            "bisect_tol" => s.bisect_tol = parse_f64(key, value)?,
            "jobs" => s.jobs = parse_usize(key, value)?,
            "grid" => (s.n_beta, s.n_dbeta) = parse_grid(value)?,
            "window" => [s.beta_min, s.beta_max, s.dbeta_min, s.dbeta_max] = parse_window(value)?,
            "seed_source" => self.seed_source = BetaSource::parse(value)?,
            "lambda" => self.lambda = parse_f64(key, value)?,
            "beta0" => self.beta0 = parse_f64(key, value)?,
            "dbeta0" => self.dbeta0 = parse_list(key, value)?,
            "kmax" => self.kmax = parse_usize(key, value)?,
            "spectral_domain" => self.spectral_domain = parse_pair(key, value)?,
            "spectral_n" => self.spectral_n = parse_usize(key, value)?,
            "derive_window" => self.derive_window = parse_pair(key, value)?,
            "derive_points" => self.derive_points = parse_usize(key, value)?,
            "operator_n" => self.operator_n = parse_usize(key, value)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Applies a config file on top of `self`.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CliError::Config(format!("{origin}:{}: {msg}", i + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            self.set(key.trim(), value.trim()).map_err(err)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.scan.validate().map_err(|e| CliError::Config(e.to_string()))?;
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if self.kmax == 0 {
            return bad("kmax must be at least 1");
        }
        if !(self.spectral_domain.0 < self.spectral_domain.1) {
            return bad("spectral_domain must be increasing");
        }
        if !(self.derive_window.0 < self.derive_window.1) {
            return bad("derive_window must be increasing");
        }
        if self.derive_points < 5 {
            return bad("derive_points must be at least 5");
        }
        if self.operator_n < 5 {
            return bad("operator_n must be at least 5");
        }
        if self.dbeta0.iter().any(|v| !v.is_finite()) || !self.beta0.is_finite() || !self.lambda.is_finite() {
            return bad("beta0, dbeta0 and lambda must be finite");
        }
        Ok(())
    }

    /// First `β'(0)` of the list.
    pub fn dbeta0_first(&self) -> Result<f64, CliError> {
        self.dbeta0
            .first()
            .copied()
            .ok_or_else(|| CliError::Usage("the dbeta0 list is empty".into()))
    }

    /// Resolved configuration as `key=value` lines; floats with 17
    /// significant digits.
    pub fn canonical(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(",");
        let mut out = self.scan.canonical();
        out.push_str(&format!("jobs={}\n", self.scan.jobs));
        out.push_str(&format!("seed_source={}\n", self.seed_source));
        out.push_str(&format!("lambda={}\n", fmt_f64(self.lambda)));
        out.push_str(&format!("beta0={}\n", fmt_f64(self.beta0)));
        out.push_str(&format!("dbeta0={}\n", list(&self.dbeta0)));
        out.push_str(&format!("kmax={}\n", self.kmax));
        out.push_str(&format!("spectral_domain={}\n", list(&[self.spectral_domain.0, self.spectral_domain.1])));
        out.push_str(&format!("spectral_n={}\n", self.spectral_n));
        out.push_str(&format!("derive_window={}\n", list(&[self.derive_window.0, self.derive_window.1])));
        out.push_str(&format!("derive_points={}\n", self.derive_points));
        out.push_str(&format!("operator_n={}\n", self.operator_n));
        out
    }

    /// Fingerprint of everything except the thread count, which cannot change
    /// results.
    pub fn fingerprint(&self) -> String {
        let text: String = self.canonical().lines().filter(|l| !l.starts_with("jobs=")).map(|l| format!("{l}\n")).collect();
        fingerprint_text(&text)
    }
}
