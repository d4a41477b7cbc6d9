use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative method hit its iteration cap before reaching the tolerance.
    #[error("no convergence after {iterations} iterations (bracket width {width:e})")]
    Convergence { iterations: usize, width: f64 },
    /// The predicate does not change value across the supplied bracket.
    #[error("invalid bracket: {0}")]
    Bracket(String),
    /// The problem has no feasible point.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// The objective produced NaN or an infinity.
    #[error("objective is not finite at {at:?} (value {value})")]
    NonFinite { at: Vec<f64>, value: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
