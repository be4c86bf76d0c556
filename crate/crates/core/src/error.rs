use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: i32, strands: usize },

    #[error("cannot parse braid word: {0}")]
    Parse(String),

    #[error("orbit budget of {budget} elements exhausted; answer unknown")]
    BudgetExceeded { budget: usize },

    #[error("closure is not a knot ({components} components)")]
    NotAKnot { components: usize },

    #[error("invariant `{phi}` does not declare required property: {missing}")]
    MissingProperty { phi: String, missing: String },

    #[error("invalid piecewise-linear profile: {0}")]
    InvalidProfile(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
