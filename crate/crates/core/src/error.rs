use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A generator `i < j` with `i >= j` breaks the natural labeling.
    #[error(
        "relation {0} < {1} violates the natural labeling (labels must increase along relations)"
    )]
    NaturalityViolation(usize, usize),

    #[error("element {label} is outside 1..={n}")]
    OutOfRange { label: usize, n: usize },

    #[error("poset has height {height}, operation needs height at least {required}")]
    HeightTooSmall { height: usize, required: usize },

    #[error("poset has height {height}, operation needs height at most {allowed}")]
    HeightTooLarge { height: usize, allowed: usize },

    #[error("exact rank exceeded its budget: {0}")]
    OverflowUnrepresentable(String),

    #[error("n = {n} exceeds the enumeration bound {max}")]
    ResourceBound { n: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
