//! Error type shared by every module in the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating or transforming
/// matrices, states, and channels.
///
/// Numeric payloads are reported as `f64` regardless of the scalar type
/// the computation ran in; they are diagnostics, not data.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix declared {rows}x{cols} but {len} entries were supplied")]
    EntryCount { rows: usize, cols: usize, len: usize },

    #[error("non-finite entry encountered at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: relative deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {value:.3e} is below -{tol:.3e}")]
    NotPositiveSemidefinite { value: f64, tol: f64 },

    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("trace is {trace:.9}, expected 1 within {tol:.3e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("channel is not trace-preserving: deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotTracePreserving { deviation: f64, tol: f64 },

    #[error("channel is not unital: deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotUnital { deviation: f64, tol: f64 },

    #[error("matrix is not unitary: deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("a channel needs at least one Kraus operator")]
    EmptyKraus,

    #[error("probability weight {value:.3e} is negative beyond the clipping tolerance")]
    NegativeWeight { value: f64 },

    #[error("probability weights sum to {sum:.9}, expected 1 within {tol:.3e}")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("expected exactly {expected} probability weights, got {found}")]
    WeightCount { expected: usize, found: usize },

    #[error("block structure is empty or contains a zero-dimensional factor")]
    InvalidBlockSpec,

    #[error("block structure spans dimension {spec} but the channel acts on dimension {dim}")]
    BlockSpecMismatch { spec: usize, dim: usize },

    #[error("block {block}: {reason}")]
    BadBlockFactor { block: usize, reason: String },
}
