use thiserror::Error;

/// Failure modes shared by every numeric and algebraic routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the routine.
    #[error("domain error: {0}")]
    Domain(String),
    /// Result would not fit in binary64; use the scaled variant.
    #[error("overflow: {0}")]
    Overflow(String),
    /// The requested integral or sum does not converge.
    #[error("divergence: {0}")]
    Divergence(String),
    /// The requested accuracy was not reached; `estimate` is the best value found.
    #[error("accuracy not reached ({context}): estimate {estimate:e}, error {err:e}")]
    Accuracy { estimate: f64, err: f64, context: String },
    /// Evaluation at (or numerically at) a pole.
    #[error("pole at {location}: residue {residue:e}")]
    Pole { location: f64, residue: f64 },
    /// A structural property (e.g. a functional-equation sign) failed to validate.
    #[error("structural error: {0}")]
    Structural(String),
    /// An exactness guarantee was violated; always an implementation bug.
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors that signal lack of numerical accuracy rather than misuse.
    pub fn is_accuracy(&self) -> bool {
        matches!(self, Error::Accuracy { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
