//! Numerical policy shared by the integrator and the scanner.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Every tolerance, window and resolution used by integration and scanning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Half-width of the integration window `[-x_max, x_max]`.
    pub x_max: f64,
    pub rtol: f64,
    pub atol: f64,
    /// `|β|` below this ends a sweep as singular.
    pub beta_floor: f64,
    /// `|β'|` above this ends a sweep as singular.
    pub blowup_cap: f64,
    /// Adaptive step below this ends a sweep as singular.
    pub step_floor: f64,
    /// Upper bound on the adaptive step; keeps the cubic Hermite dense
    /// output accurate between accepted steps.
    pub max_step: f64,
    /// Offset of the Taylor start used when `|β(0)| < beta_floor`.
    pub series_eps: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub dbeta_min: f64,
    pub dbeta_max: f64,
    pub n_beta: usize,
    pub n_dbeta: usize,
    pub bisect_tol: f64,
    /// Worker threads for region scans; 0 means one per available CPU.
    /// Not part of the fingerprint.
    pub jobs: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            x_max: 6.0,
            rtol: 1e-12,
            atol: 1e-14,
            beta_floor: 1e-8,
            blowup_cap: 1e6,
            step_floor: 1e-12,
            max_step: 0.05,
            series_eps: 1e-4,
            beta_min: -1.1,
            beta_max: 1.1,
            dbeta_min: -4.0,
            dbeta_max: 1.0,
            n_beta: 45,
            n_dbeta: 60,
            bisect_tol: 1e-4,
            jobs: 0,
        }
    }
}

impl ScanConfig {
    /// Checks the integration part of the policy only.
    pub fn validate_integration(&self) -> Result<()> {
        let positive = [
            ("x_max", self.x_max),
            ("rtol", self.rtol),
            ("atol", self.atol),
            ("beta_floor", self.beta_floor),
            ("blowup_cap", self.blowup_cap),
            ("step_floor", self.step_floor),
            ("max_step", self.max_step),
            ("series_eps", self.series_eps),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.step_floor >= self.max_step {
            return Err(Error::InvalidConfig("step_floor must be below max_step".into()));
        }
        if self.series_eps >= self.x_max {
            return Err(Error::InvalidConfig("series_eps must be below x_max".into()));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_integration()?;
        if !(self.bisect_tol.is_finite() && self.bisect_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "bisect_tol must be positive, got {}",
                self.bisect_tol
            )));
        }
        if !(self.beta_min < self.beta_max && self.dbeta_min < self.dbeta_max) {
            return Err(Error::InvalidConfig("plane window is degenerate".into()));
        }
        if ![self.beta_min, self.beta_max, self.dbeta_min, self.dbeta_max]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::InvalidConfig("plane window must be finite".into()));
        }
        if self.n_beta == 0 || self.n_dbeta == 0 {
            return Err(Error::InvalidConfig("grid dimensions must be at least 1".into()));
        }
        Ok(())
    }

    /// Cell-center `β(0)` of column `i`.
    pub fn beta_center(&self, i: usize) -> f64 {
        let w = (self.beta_max - self.beta_min) / self.n_beta as f64;
        self.beta_min + (i as f64 + 0.5) * w
    }

    /// Cell-center `β'(0)` of row `j`.
    pub fn dbeta_center(&self, j: usize) -> f64 {
        let w = (self.dbeta_max - self.dbeta_min) / self.n_dbeta as f64;
        self.dbeta_min + (j as f64 + 0.5) * w
    }

    /// Canonical `key=value` listing; floats in 17 significant digits.
    pub fn canonical(&self) -> String {
        let floats = [
            ("x_max", self.x_max),
            ("rtol", self.rtol),
            ("atol", self.atol),
            ("beta_floor", self.beta_floor),
            ("blowup_cap", self.blowup_cap),
            ("step_floor", self.step_floor),
            ("max_step", self.max_step),
            ("series_eps", self.series_eps),
            ("beta_min", self.beta_min),
            ("beta_max", self.beta_max),
            ("dbeta_min", self.dbeta_min),
            ("dbeta_max", self.dbeta_max),
            ("bisect_tol", self.bisect_tol),
        ];
        let mut out = String::new();
        for (k, v) in floats {
            out.push_str(&format!("{k}={v:.16e}\n"));
        }
        out.push_str(&format!("n_beta={}\nn_dbeta={}\n", self.n_beta, self.n_dbeta));
        out
    }

    /// Short SHA-256 digest of [`canonical`](Self::canonical).
    pub fn fingerprint(&self) -> String {
        fingerprint_text(&self.canonical())
    }
}

/// First 16 hex digits of the SHA-256 of `text`.
pub fn fingerprint_text(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        ScanConfig::default().validate().unwrap();
    }

    #[test]
    fn fingerprint_ignores_jobs_but_not_tolerances() {
        let a = ScanConfig::default();
        let b = ScanConfig { jobs: 7, ..a.clone() };
        let c = ScanConfig { rtol: 1e-9, ..a.clone() };
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
        assert_eq!(a.fingerprint().len(), 16);
    }

    #[test]
    fn rejects_bad_values() {
        let bad = ScanConfig { rtol: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = ScanConfig { x_max: -1.0, ..Default::default() };
        assert!(bad.validate_integration().is_err());
        let bad = ScanConfig { beta_min: 1.0, beta_max: 1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = ScanConfig { n_dbeta: 0, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn cell_centers() {
        let cfg = ScanConfig {
            beta_min: -1.0,
            beta_max: 1.0,
            n_beta: 4,
            ..Default::default()
        };
        assert_eq!(cfg.beta_center(0), -0.75);
        assert_eq!(cfg.beta_center(3), 0.75);
    }
}
