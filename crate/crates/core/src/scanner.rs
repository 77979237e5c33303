//! Classification of the `(β(0), β'(0))` plane.
//!
//! A point is *regular* when its trajectory of the `β`-equation reaches both
//! ends of `[-x_max, x_max]`, which is exactly when the partner potential
//! `Ṽ = x² + 2β'` stays finite there. For each `β(0)` column the scanner
//! walks away from the particular-solution curve `β'(0) = -2 + β(0)²` in both
//! directions and bisects the first regular/singular flip.

use rayon::prelude::*;
use serde::Serialize;

use crate::beta_ode::{initial_curve, integrate, InitialPoint, SolutionStatus};
use crate::io::{fmt_f64, CsvDoc};
use crate::{Error, Result, ScanConfig, VERSION};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    Regular,
    /// The trajectory was stopped at `x_sing`.
    Singular { x_sing: f64 },
}

impl Classification {
    pub fn is_regular(&self) -> bool {
        matches!(self, Classification::Regular)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Regular => "regular",
            Classification::Singular { .. } => "singular",
        }
    }

    pub fn x_sing(&self) -> Option<f64> {
        match *self {
            Classification::Regular => None,
            Classification::Singular { x_sing } => Some(x_sing),
        }
    }
}

/// Integrates from `p` and reports whether the trajectory is regular.
pub fn classify_point(p: InitialPoint, cfg: &ScanConfig) -> Result<Classification> {
    let sol = integrate(p, cfg)?;
    Ok(match *sol.status() {
        SolutionStatus::Regular => Classification::Regular,
        SolutionStatus::Singular { x_sing, .. } => Classification::Singular { x_sing },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }
}

/// A bisected regular/singular boundary in `β'(0)` at fixed `β(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// Midpoint of the final bracket.
    pub value: f64,
    /// Bracket end known to classify regular.
    pub regular_side: f64,
    /// Bracket end known to classify singular.
    pub singular_side: f64,
    /// Where the trajectory at `singular_side` was stopped.
    pub x_sing: f64,
}

impl Threshold {
    pub fn width(&self) -> f64 {
        (self.singular_side - self.regular_side).abs()
    }
}

/// Number of initial expansion steps that fit in the `β'(0)` window.
const EXPANSION_DIVISIONS: f64 = 64.0;

/// Finds the first singular `β'(0)` above (or below) the curve point of
/// `beta0` and bisects the flip to `cfg.bisect_tol`.
///
/// The walk starts at the curve value with a step of 1/64 of the `β'(0)`
/// window, doubling after every regular probe and clamping the last probe to
/// the window edge.
pub fn threshold_bisect(beta0: f64, direction: Direction, cfg: &ScanConfig) -> Result<Threshold> {
    cfg.validate()?;
    let seed = initial_curve(beta0).map_err(|_| {
        Error::Threshold(format!("β(0) = {beta0} has no point on the particular-solution curve"))
    })?;
    if !(cfg.dbeta_min..=cfg.dbeta_max).contains(&seed) {
        return Err(Error::Threshold(format!(
            "curve point β'(0) = {seed} lies outside the window [{}, {}]",
            cfg.dbeta_min, cfg.dbeta_max
        )));
    }
    let classify = |d: f64| classify_point(InitialPoint::new(beta0, d), cfg);
    if !classify(seed)?.is_regular() {
        return Err(Error::Threshold(format!("seed ({beta0}, {seed}) is not regular")));
    }

    let s = direction.sign();
    let edge = if s > 0.0 { cfg.dbeta_max } else { cfg.dbeta_min };
    let mut step = (cfg.dbeta_max - cfg.dbeta_min) / EXPANSION_DIVISIONS;
    let mut regular = seed;
    let (mut singular, mut x_sing) = loop {
        if regular == edge {
            return Err(Error::Threshold(format!(
                "no singular β'(0) between {seed} and the window edge {edge} at β(0) = {beta0}"
            )));
        }
        let probe = if s > 0.0 { (regular + step).min(edge) } else { (regular - step).max(edge) };
        match classify(probe)? {
            Classification::Regular => {
                regular = probe;
                step *= 2.0;
            }
            Classification::Singular { x_sing } => break (probe, x_sing),
        }
    };

    while (singular - regular).abs() > cfg.bisect_tol {
        let mid = 0.5 * (regular + singular);
        match classify(mid)? {
            Classification::Regular => regular = mid,
            Classification::Singular { x_sing: xs } => {
                singular = mid;
                x_sing = xs;
            }
        }
    }
    Ok(Threshold { value: 0.5 * (regular + singular), regular_side: regular, singular_side: singular, x_sing })
}

/// One classified cell center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub beta0: f64,
    pub dbeta0: f64,
    pub class: Classification,
}

/// Threshold results for one `β(0)` column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnThresholds {
    pub column: usize,
    pub beta0: f64,
    /// `-2 + β(0)²` when the curve point is inside the window.
    pub curve_dbeta0: Option<f64>,
    pub upper: Option<Threshold>,
    pub lower: Option<Threshold>,
    /// The regular band around the curve point is narrower than
    /// `2·bisect_tol`; no thresholds are reported for such a column.
    pub pinched: bool,
    pub notes: Vec<String>,
}

impl ColumnThresholds {
    /// Both thresholds when available, as `(lower, upper)`.
    pub fn bracket(&self) -> Option<(f64, f64)> {
        Some((self.lower?.value, self.upper?.value))
    }
}

/// The classified grid plus per-column thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap {
    pub config: ScanConfig,
    /// `cells[i][j]`: column `i` in `β(0)`, row `j` in `β'(0)`.
    pub cells: Vec<Vec<Cell>>,
    pub thresholds: Vec<ColumnThresholds>,
    pub warnings: Vec<String>,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))
}

/// Classifies every cell center and bisects the thresholds of every column
/// whose curve point is inside the window.
///
/// Work is spread over `cfg.jobs` threads; results are stored by index so the
/// map does not depend on scheduling.
pub fn scan_region(cfg: &ScanConfig) -> Result<RegionMap> {
    cfg.validate()?;
    let pool = pool(cfg.jobs)?;
    let (nb, nd) = (cfg.n_beta, cfg.n_dbeta);

    let classes: Vec<Result<Cell>> = pool.install(|| {
        (0..nb * nd)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / nd, idx % nd);
                let p = InitialPoint::new(cfg.beta_center(i), cfg.dbeta_center(j));
                classify_point(p, cfg).map(|class| Cell { beta0: p.beta0, dbeta0: p.dbeta0, class })
            })
            .collect()
    });
    let flat = classes.into_iter().collect::<Result<Vec<_>>>()?;
    let cells: Vec<Vec<Cell>> = flat.chunks(nd).map(|c| c.to_vec()).collect();

    let thresholds: Vec<ColumnThresholds> =
        pool.install(|| (0..nb).into_par_iter().map(|i| column_thresholds(i, cfg)).collect());

    let mut warnings = Vec::new();
    let seeded = thresholds.iter().filter(|t| t.curve_dbeta0.is_some()).count();
    if seeded == 0 {
        warnings.push("the particular-solution curve does not enter the window; threshold table is empty".into());
    } else if seeded < nb {
        warnings.push(format!("{} of {nb} columns have no curve point in the window", nb - seeded));
    }
    for t in &thresholds {
        for n in &t.notes {
            warnings.push(format!("column {} (β(0) = {}): {n}", t.column, t.beta0));
        }
    }
    Ok(RegionMap { config: cfg.clone(), cells, thresholds, warnings })
}

fn column_thresholds(column: usize, cfg: &ScanConfig) -> ColumnThresholds {
    let beta0 = cfg.beta_center(column);
    let curve = initial_curve(beta0).ok().filter(|d| (cfg.dbeta_min..=cfg.dbeta_max).contains(d));
    let mut out = ColumnThresholds {
        column,
        beta0,
        curve_dbeta0: curve,
        upper: None,
        lower: None,
        pinched: false,
        notes: Vec::new(),
    };
    if curve.is_none() {
        return out;
    }
    for dir in [Direction::Up, Direction::Down] {
        match threshold_bisect(beta0, dir, cfg) {
            Ok(t) => match dir {
                Direction::Up => out.upper = Some(t),
                Direction::Down => out.lower = Some(t),
            },
            Err(e) => out.notes.push(format!("{dir:?} threshold unavailable: {e}").to_lowercase()),
        }
    }
    // Near β(0) = 0 the band collapses onto β'(0) = -2 and cannot be resolved
    // at the bisection tolerance.
    if let (Some(lo), Some(up)) = (out.lower, out.upper) {
        if up.value - lo.value < 2.0 * cfg.bisect_tol {
            out.pinched = true;
            out.notes.push(format!(
                "regular band [{}, {}] is narrower than 2·bisect_tol; thresholds not resolved",
                lo.value, up.value
            ));
            out.lower = None;
            out.upper = None;
        }
    }
    out
}

#[derive(Serialize)]
struct Counts {
    regular: usize,
    singular: usize,
}

#[derive(Serialize)]
struct RegionJson<'a> {
    tool: String,
    fingerprint: String,
    config: serde_json::Value,
    counts: Counts,
    thresholds: &'a [ColumnThresholds],
    warnings: &'a [String],
}

impl RegionMap {
    /// `(regular, singular)` cell counts.
    pub fn counts(&self) -> (usize, usize) {
        let regular = self.cells.iter().flatten().filter(|c| c.class.is_regular()).count();
        (regular, self.cells.iter().map(Vec::len).sum::<usize>() - regular)
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<&Cell> {
        self.cells.get(i)?.get(j)
    }

    /// One row per cell center: `i,j,beta0,dbeta0,label,x_sing` (`x_sing`
    /// empty for regular cells).
    pub fn to_csv(&self) -> String {
        let mut doc = CsvDoc::new(&["i", "j", "beta0", "dbeta0", "label", "x_sing"])
            .with_meta("tool", format!("sususy {VERSION}"))
            .with_meta("fingerprint", self.config.fingerprint())
            .with_meta("grid", format!("{}x{}", self.config.n_beta, self.config.n_dbeta));
        for (i, column) in self.cells.iter().enumerate() {
            for (j, c) in column.iter().enumerate() {
                doc.push_row(vec![
                    i.to_string(),
                    j.to_string(),
                    fmt_f64(c.beta0),
                    fmt_f64(c.dbeta0),
                    c.class.label().to_string(),
                    c.class.x_sing().map(fmt_f64).unwrap_or_default(),
                ]);
            }
        }
        doc.render()
    }

    /// Config echo (without the thread count), counts, threshold table and
    /// warnings.
    pub fn to_json(&self) -> String {
        let mut config = serde_json::to_value(&self.config).expect("config serializes");
        if let Some(map) = config.as_object_mut() {
            map.remove("jobs");
        }
        let (regular, singular) = self.counts();
        let doc = RegionJson {
            tool: format!("sususy {VERSION}"),
            fingerprint: self.config.fingerprint(),
            config,
            counts: Counts { regular, singular },
            thresholds: &self.thresholds,
            warnings: &self.warnings,
        };
        serde_json::to_string_pretty(&doc).expect("region map serializes") + "\n"
    }
}
