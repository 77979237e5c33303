use super::Potential;
use crate::io::{fmt_f64, CsvDoc};
use crate::{Error, Result, VERSION};

/// Smallest grid accepted by [`discretize`].
const MIN_POINTS: usize = 16;

/// `-d²/dx² + V` on `n` interior points of `[a, b]` with Dirichlet ends.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedHamiltonian {
    pub domain: (f64, f64),
    pub n: usize,
    /// `2/h² + V(x_i)`
    pub diag: Vec<f64>,
    /// `-1/h²`, length `n - 1`.
    pub offdiag: Vec<f64>,
    pub label: String,
}

impl DiscretizedHamiltonian {
    /// `h = (b - a)/(n + 1)`
    pub fn h(&self) -> f64 {
        (self.domain.1 - self.domain.0) / (self.n + 1) as f64
    }

    /// Interior abscissas `a + (i + 1) h`.
    pub fn grid(&self) -> Vec<f64> {
        interior_grid(self.domain, self.n)
    }

    /// Gershgorin interval containing every eigenvalue.
    fn bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.n {
            let mut r = 0.0;
            if i > 0 {
                r += self.offdiag[i - 1].abs();
            }
            if i + 1 < self.n {
                r += self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }
}

fn interior_grid(domain: (f64, f64), n: usize) -> Vec<f64> {
    let h = (domain.1 - domain.0) / (n + 1) as f64;
    (1..=n).map(|i| domain.0 + i as f64 * h).collect()
}

/// Three-point finite-difference Hamiltonian of `pot` on `domain`.
pub fn discretize(pot: &dyn Potential, domain: (f64, f64), n: usize) -> Result<DiscretizedHamiltonian> {
    if n < MIN_POINTS {
        return Err(Error::TooFewPoints { need: MIN_POINTS, got: n });
    }
    let (a, b) = domain;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidConfig(format!("bad spectral domain [{a}, {b}]")));
    }
    let h = (b - a) / (n + 1) as f64;
    let inv = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(n);
    for x in interior_grid(domain, n) {
        let v = pot.value(x);
        if !v.is_finite() {
            return Err(Error::NonFinitePotential { x, value: v });
        }
        diag.push(2.0 * inv + v);
    }
    Ok(DiscretizedHamiltonian { domain, n, diag, offdiag: vec![-inv; n - 1], label: pot.label() })
}

/// Number of eigenvalues strictly below `lambda` (Sturm sequence of the
/// `LDLᵀ` pivots).
pub fn sturm_count(hd: &DiscretizedHamiltonian, lambda: f64) -> usize {
    let pivmin = pivot_floor(hd);
    let mut count = 0;
    let mut q = hd.diag[0] - lambda;
    for i in 0..hd.n {
        if i > 0 {
            let e = hd.offdiag[i - 1];
            q = hd.diag[i] - lambda - e * e / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn pivot_floor(hd: &DiscretizedHamiltonian) -> f64 {
    let emax = hd.offdiag.iter().fold(1.0f64, |m, e| m.max(e * e));
    f64::MIN_POSITIVE * emax
}

/// The `k` lowest eigenvalues of a discretized Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Strictly ascending.
    pub eigenvalues: Vec<f64>,
    pub domain: (f64, f64),
    pub n: usize,
    pub label: String,
}

impl Spectrum {
    pub fn k(&self) -> usize {
        self.eigenvalues.len()
    }

    /// CSV with columns `level,eigenvalue`.
    pub fn to_csv(&self, fingerprint: &str) -> String {
        let mut doc = CsvDoc::new(&["level", "eigenvalue"])
            .with_meta("tool", format!("sususy {VERSION}"))
            .with_meta("fingerprint", fingerprint)
            .with_meta("potential", self.label.clone())
            .with_meta("domain", format!("{},{}", fmt_f64(self.domain.0), fmt_f64(self.domain.1)))
            .with_meta("n", self.n.to_string());
        for (i, e) in self.eigenvalues.iter().enumerate() {
            doc.push_row(vec![i.to_string(), fmt_f64(*e)]);
        }
        doc.render()
    }
}

/// Lowest `k` eigenvalues by bisection on the Sturm count, each converged
/// to a few ulps.
pub fn eigenvalues(hd: &DiscretizedHamiltonian, k: usize) -> Result<Spectrum> {
    if k == 0 || k > hd.n {
        return Err(Error::KOutOfRange { k, n: hd.n });
    }
    let (glo, ghi) = hd.bounds();
    let mut out = Vec::with_capacity(k);
    let mut lo = glo;
    for i in 0..k {
        let mut hi = ghi;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            if sturm_count(hd, mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        out.push(value);
        // The next eigenvalue is not below this one.
        lo = value.min(hi);
    }
    Ok(Spectrum { eigenvalues: out, domain: hd.domain, n: hd.n, label: hd.label.clone() })
}

/// `{1, 3, 5, ...}`, the first `k` levels of `-d²/dx² + x²`.
pub fn oscillator_levels(k: usize) -> Vec<f64> {
    (0..k).map(|m| (2 * m + 1) as f64).collect()
}

/// Level-by-level `|a_i - b_i|` of two spectra from the same discretization.
pub fn compare_spectra(a: &Spectrum, b: &Spectrum) -> Result<Vec<f64>> {
    if a.k() != b.k() {
        return Err(Error::IncompatibleSpectra(format!("k = {} vs k = {}", a.k(), b.k())));
    }
    if a.n != b.n || a.domain != b.domain {
        return Err(Error::IncompatibleSpectra(format!(
            "n = {} on [{}, {}] vs n = {} on [{}, {}]",
            a.n, a.domain.0, a.domain.1, b.n, b.domain.0, b.domain.1
        )));
    }
    Ok(a.eigenvalues.iter().zip(&b.eigenvalues).map(|(x, y)| (x - y).abs()).collect())
}
