//! Failure modes of the reference computations.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, OracleError>;

#[derive(Debug, Error)]
pub enum OracleError {
    /// A pivot or eigenvalue that must be positive for a positive-definite
    /// input came out nonpositive at working precision.
    #[error("matrix is not positive definite at step {step} (value {value:e})")]
    NotPositive { step: usize, value: f64 },

    /// The Jacobi sweep limit was reached before all off-diagonal entries
    /// fell under the relative threshold.
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    JacobiStall { sweeps: usize },

    /// A computed con-eigenpair failed its own residual test: the working
    /// precision does not support the requested digit count on this input.
    #[error(
        "residual {residual:e} of con-eigenpair {pair} exceeds {threshold:e}; \
         raise the digit budget"
    )]
    PrecisionExhausted {
        pair: usize,
        residual: f64,
        threshold: f64,
    },

    /// Newton refinement of a root did not settle within the iteration cap.
    #[error("root refinement from start {start} did not converge")]
    NewtonStall { start: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(transparent)]
    Inner(#[from] coneig::Error),
}
