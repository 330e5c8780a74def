use thiserror::Error;

/// Errors raised by matrix construction and the geometric operations built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (||U*U - I||_F = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e} <= floor {floor:.3e})")]
    NotPositive { min_eigenvalue: f64, floor: f64 },

    #[error("matrix is singular (smallest singular value {min_singular_value:.3e})")]
    Singular { min_singular_value: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("outside the domain of {operation}: {reason}")]
    Domain {
        operation: &'static str,
        reason: String,
    },

    #[error("not a rebit: {0}")]
    NotRebit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
