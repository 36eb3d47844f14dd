use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed tables, out-of-range parameters, bad indices.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("the space has no self-map")]
    MissingSelfmap,

    #[error("gauge returned {value} at argument {arg}")]
    Gauge { arg: f64, value: f64 },

    /// A hypothesis that an operation relies on does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("instance generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
