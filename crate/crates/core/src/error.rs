use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("step {index}: {reason}")]
    InvalidStep { index: usize, reason: String },

    #[error("invalid curve spec: {0}")]
    InvalidSpec(String),

    #[error("graph has {vertices} vertices, above the search limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("truncation bound {given} is below the required minimum {required}")]
    BoundTooSmall { given: u32, required: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("radiality undetermined for this curve class")]
    RadialityUndetermined,

    #[error("valuation of the zero element is undefined")]
    ZeroInput,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("certificate shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("realizability conditions violated: {0}")]
    NotRealizable(String),

    #[error("Camacho-Sad solver exhausted on white component containing vertex {vertex}")]
    SolverExhausted { vertex: usize },
}

impl Error {
    /// Errors that indicate a bug or a broken internal guarantee rather
    /// than bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::SolverExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
