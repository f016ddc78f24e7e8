use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("pairing is not simple")]
    NotSimple,
    #[error("no anchor available for a {0} switching")]
    NoAnchor(&'static str),
    #[error("candidate is not a valid switching of the pairing")]
    InvalidApply,
    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("path index is out of sync with the pairing")]
    OutOfSync,
    #[error("rho system infeasible: {0}")]
    InfeasibleSystem(String),
    #[error("insufficient samples: expected count {expected:.3} per category is below 5")]
    InsufficientSamples { expected: f64 },
    #[error("retry cap of {0} exceeded without finding a valid switching")]
    RetryCapExceeded(u64),
    #[error("b = {b} is below the lower bound {m_lo} (phase {phase}, stratum {stratum})")]
    BoundViolation {
        phase: u8,
        stratum: usize,
        b: u128,
        m_lo: u128,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
