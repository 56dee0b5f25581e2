use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The point lies on a horizon, or between horizons where the static
    /// frame does not exist.
    #[error("point z = {z} is on or inside a horizon (e^(2A) = {lapse_squared:e})")]
    Horizon { z: f64, lapse_squared: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("quadrature did not converge: residual {residual:e} after {evaluations} evaluations")]
    Convergence { residual: f64, evaluations: usize },

    #[error("{0}")]
    Numerical(String),

    #[error("at least two data rows are required, got {0}")]
    EmptyData(usize),

    #[error("{0}")]
    Assertion(String),
}

impl Error {
    /// Stable name of the error kind, used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Horizon { .. } => "HorizonError",
            Error::Domain(_) => "DomainError",
            Error::Convergence { .. } => "ConvergenceError",
            Error::Numerical(_) => "NumericalError",
            Error::EmptyData(_) => "EmptyDataError",
            Error::Assertion(_) => "AssertionFailure",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
