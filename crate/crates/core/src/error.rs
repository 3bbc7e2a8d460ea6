use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function being evaluated.
    #[error("domain error: {what} = {value} ({reason})")]
    Domain {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The entropy integral diverges logarithmically as Z -> 0+.
    #[error("entropy integral S(Z) diverges at Z = 0")]
    EntropyDivergence,

    /// Requested internal energy lies outside the range of theta -> e(rho, theta).
    #[error("no temperature with e({rho}, theta) = {eps}: range on bracket is [{e_lo}, {e_hi}]")]
    NoSolution {
        rho: f64,
        eps: f64,
        e_lo: f64,
        e_hi: f64,
    },

    #[error(
        "temperature inversion did not converge after {iterations} iterations \
         (rho = {rho}, eps = {eps}, bracket = [{lo}, {hi}], residual = {residual})"
    )]
    NonConvergence {
        rho: f64,
        eps: f64,
        iterations: usize,
        lo: f64,
        hi: f64,
        residual: f64,
    },

    /// A discrete state that cannot be continued (vacuum, failed temperature recovery).
    #[error("invalid state in cell {cell}: {reason}")]
    InvalidState { cell: usize, reason: String },

    #[error("time step {dt} exceeds the stability limit; use dt <= {suggested}")]
    Stability { dt: f64, suggested: f64 },

    /// Shapes or time stamps of inputs that must agree do not.
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("no data rows in {0}")]
    EmptyData(PathBuf),

    #[error("{context}: {source}")]
    Scenario {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            reason,
        }
    }

    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn in_scenario(self, context: impl Into<String>) -> Self {
        Error::Scenario {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
