use thiserror::Error;

/// Errors shared across the factorization and reduction pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two poles have the same exponent after normalization; the Cauchy
    /// matrix would be singular.
    #[error("coincident pole exponents")]
    CoincidentPoles,

    /// A residue is exactly zero; the term must be dropped upstream.
    #[error("zero residue at index {index}")]
    ZeroResidue { index: usize },

    /// A pole exponent has nonpositive real part (|gamma| >= 1).
    #[error("pole exponent {index} has re_tau = {re_tau} <= 0")]
    PoleOnOrOutsideCircle { index: usize, re_tau: f64 },

    /// A selected pivot was nonpositive or had a non-real part beyond
    /// tolerance: the matrix is not positive definite.
    #[error("matrix not positive definite: pivot {value} at step {step}")]
    NotPositive { step: usize, value: f64 },

    /// A pivot column norm underflowed to zero during QR.
    #[error("rank deficient at QR step {step}")]
    RankDeficient { step: usize },

    /// Jacobi sweeps did not reach the orthogonality threshold.
    #[error("Jacobi SVD did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// Two interpolation nodes coincide at double resolution; the
    /// interpolant's partial-fraction coefficients are undefined there.
    #[error("interpolation nodes {i} and {j} coincide")]
    CoincidentNodes { i: usize, j: usize },

    /// Newton root search did not produce the expected number of distinct
    /// unit-disk roots.
    #[error("found {found} unit-disk roots, expected {expected}")]
    RootCountMismatch { found: usize, expected: usize },

    /// The truncated factorization cannot certify the pair straddling the
    /// delta boundary.
    #[error("delta = {delta} too small for the computed truncation rank")]
    DeltaTooSmall { delta: f64 },

    /// An intermediate quantity left the double-precision range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Input rational function failed validation.
    #[error("invalid rational function: {0}")]
    InvalidFunction(String),

    /// A numeric parameter is out of its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
