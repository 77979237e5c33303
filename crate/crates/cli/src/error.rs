use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("config error: {0}")]
    Config(String),

    /// A singularity or other numerical failure where a regular result was
    /// required.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 0 success, 1 usage/config/io, 2 numerical failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => 2,
            _ => 1,
        }
    }
}

impl From<sususy::Error> for CliError {
    fn from(e: sususy::Error) -> Self {
        use sususy::Error as E;
        match e {
            E::InvalidConfig(_) | E::Parse { .. } => CliError::Config(e.to_string()),
            E::LambdaOutOfRange(_)
            | E::CurveOutOfRange(_)
            | E::KOutOfRange { .. }
            | E::TooFewPoints { .. }
            | E::LengthMismatch(_)
            | E::NonMonotoneGrid(_)
            | E::NonUniformGrid
            | E::IncompatibleSpectra(_) => CliError::Usage(e.to_string()),
            E::BetaFloor { .. }
            | E::OutOfDomain { .. }
            | E::SingularSolution(_)
            | E::Threshold(_)
            | E::NonFinitePotential { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
