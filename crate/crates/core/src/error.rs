use thiserror::Error;

/// Errors raised by state construction, linear algebra and measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystem(String),

    #[error("matrix is not Hermitian (max |h - h^dagger| = {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositive { eigenvalue: f64 },

    #[error("trace {trace} deviates from 1")]
    TraceDeviation { trace: f64 },

    #[error("state vector is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("state is not maximally entangled (concurrence {concurrence})")]
    NotMaximallyEntangled { concurrence: f64 },

    #[error("Kraus operators are not complete (max deviation {deviation:e})")]
    IncompleteKraus { deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
