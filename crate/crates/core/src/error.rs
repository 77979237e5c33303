use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// `|β(x)|` fell below the division floor in a closed form.
    #[error("beta too close to zero at x = {x}: |beta| = {beta:e} < floor {floor:e}")]
    BetaFloor { x: f64, beta: f64, floor: f64 },

    #[error("x = {x} lies outside the provider domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("lambda = {0} violates |lambda| > sqrt(pi)/2")]
    LambdaOutOfRange(f64),

    #[error("beta(0) = {0} violates |beta(0)| < 2/sqrt(pi)")]
    CurveOutOfRange(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("grid needs at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("grid is not strictly increasing at index {0}")]
    NonMonotoneGrid(usize),

    #[error("grid is not uniform")]
    NonUniformGrid,

    #[error("array length mismatch: {0}")]
    LengthMismatch(String),

    #[error("solution is singular at x = {0}")]
    SingularSolution(f64),

    #[error("threshold search failed: {0}")]
    Threshold(String),

    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("non-finite potential value {value} at x = {x}")]
    NonFinitePotential { x: f64, value: f64 },

    #[error("spectra are not comparable: {0}")]
    IncompatibleSpectra(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
