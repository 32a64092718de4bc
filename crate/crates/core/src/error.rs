use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix contains non-finite entries")]
    InvalidMatrix,

    #[error("matrix is not Hermitian (deviation {deviation:.3e}, allowed {allowed:.3e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("operator is not a projector (deviation {deviation:.3e})")]
    NotProjector { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis constraint eliminated every state")]
    EmptyBasis,

    #[error("basis too large: {sites} sites exceeds the cap of {cap}")]
    TooLarge { sites: usize, cap: usize },

    #[error("operation not supported for this basis: {0}")]
    Unsupported(String),

    #[error("model and basis are inconsistent: {0}")]
    Mismatch(String),

    #[error("state leaks {leakage:.3e} of its weight outside the measurement subspace")]
    StateOutsideSubspace { leakage: f64 },

    #[error("every measurement outcome has negligible probability at step {step}")]
    DegenerateStep { step: usize },

    #[error("invalid timestep moments: {0}")]
    InvalidMoments(String),

    #[error("subspace switch amplitude vanishes identically")]
    ZeroVector,

    #[error("truncation order {order} outside the supported range 1..={max}")]
    InvalidOrder { order: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
