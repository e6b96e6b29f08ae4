//! Con-eigenvalue decompositions of positive-definite Cauchy matrices with
//! high relative accuracy, and near-optimal reduction of rational functions
//! on the unit circle built on top of them.
//!
//! The pipeline: a rational function with poles inside the unit disk yields a
//! Hermitian positive-definite Cauchy matrix; a pivoted partial Cholesky
//! factorization computed entirely through cancellation-free quotient kernels
//! gives a rank-revealing decomposition; pivoted QR plus one-sided Jacobi turn
//! that into con-eigenvalues accurate relative to themselves down to the
//! truncation threshold; and the con-eigenvector at the target accuracy
//! locates, via a Newton search on a barycentric rational interpolant, the
//! poles of a reduced rational function whose sup-norm error on the circle
//! is close to the selected con-eigenvalue.

pub mod cauchy;
pub mod cholesky;
pub mod coneig;
pub mod error;
pub mod expsum;
pub mod format;
pub mod kernels;
pub mod matrix;
pub mod qr;
pub mod reduction;
pub mod svd;

pub use cauchy::{
    eval_entry, generators_from_rational, validate, CauchyGenerators, Diagnostics,
    RationalFunction,
};
pub use cholesky::{cholesky_full, partial_cholesky, pivot_order, PartialCholesky};
pub use coneig::{con_eigvector, coneig_rrd, gram_factors, ConEigDecomposition, GramFactors};
pub use error::{Error, Result};
pub use expsum::{
    expsum_eval, inverse_power_expsum, rational_from_expsum, ExpSumParams, ExpSumTerm,
};
pub use format::{f64_to_decimal, from_json, parse_decimal, to_json};
pub use kernels::{one_minus_exp, ExponentPole};
pub use matrix::Matrix;
pub use qr::{qr_householder_pivoted, PivotedQr};
pub use reduction::{
    adaptive_grid, build_interpolant, coneig_values_of_v, find_unit_disk_roots, reduce,
    reduce_with_grid, solve_residues, sup_error_estimate, RationalInterpolant, ReductionReport,
};
pub use svd::jacobi_svd_left;
