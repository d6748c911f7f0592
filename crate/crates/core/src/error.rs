use thiserror::Error;

/// Every failure surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("eigenvalue interval [{lo}, {hi}] straddles a branch point of delta")]
    UncertifiableBranch { lo: f64, hi: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off})")]
    ConvergenceFailure { sweeps: usize, off: f64 },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("decision routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("invalid ring profile: {0}")]
    InvalidProfile(String),
    #[error("connection set is not closed under negation")]
    NonSymmetricConnection,
    #[error("not semiprimitive: {0}")]
    NotSemiprimitive(String),
    #[error("unsupported local factor: {0}")]
    UnsupportedFactor(String),
    #[error("cannot write output: {msg}")]
    Output { msg: String, broken_pipe: bool },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output {
            broken_pipe: e.kind() == std::io::ErrorKind::BrokenPipe,
            msg: e.to_string(),
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => io.into(),
            other => Error::Output {
                msg: format!("{other:?}"),
                broken_pipe: false,
            },
        }
    }
}
