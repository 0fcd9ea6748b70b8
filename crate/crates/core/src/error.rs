use thiserror::Error;

/// Errors raised by the linear-algebra, state and witness layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid subsystem selector: {0}")]
    InvalidSelector(String),

    #[error("Kraus family is not trace preserving (completeness defect {defect:e})")]
    NotTracePreserving { defect: f64 },

    #[error("basis is not orthonormal (defect {defect:e})")]
    NotOrthonormal { defect: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("ensemble is invalid: {0}")]
    InvalidEnsemble(String),

    #[error("unknown state id `{0}`")]
    UnknownState(String),

    #[error("simultaneous diagonalization failed after {attempts} attempts (residual {residual:e})")]
    DiagonalizationFailed { attempts: usize, residual: f64 },

    #[error("state has the wrong class for this operation: {0}")]
    WrongClass(String),

    #[error("side information is inconsistent with the state (distance {distance:e})")]
    SideInfoInconsistent { distance: f64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
