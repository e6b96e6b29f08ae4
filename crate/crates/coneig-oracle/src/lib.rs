//! Multiple-precision reference computations for validating the double
//! precision pipeline in `coneig`.
//!
//! Every algorithm here recomputes its target quantity from the raw pole
//! and residue data by plain textbook formulas at a few hundred digits,
//! sharing no code path with the double-precision implementation. That
//! makes agreement between the two a meaningful check rather than a
//! tautology.

pub mod assemble;
pub mod eigen;
pub mod ensemble;
pub mod error;
pub mod expsum_check;
pub mod gauge;
pub mod gecp;
pub mod kernels;
pub mod matrix;
pub mod mp;
pub mod roots;
pub mod stats;

pub use assemble::{cauchy_mp, MpCauchy};
pub use eigen::hermitian_eigen;
pub use ensemble::random_function;
pub use error::{OracleError, Result};
pub use expsum_check::{residual_at, residual_scan, ResidualScan};
pub use gauge::{oracle_coneig, OracleConEig};
pub use gauge::oracle_coneig_of;
pub use gecp::{oracle_gecp, oracle_gecp_of, OracleCholesky};
pub use kernels::{one_minus_exp_oracle, ratio_x_oracle, ratio_y_oracle};
pub use roots::{aux_weights, exponent_errors, refine_roots};
pub use matrix::MpMatrix;
pub use stats::{coneig_errors, ConEigErrors};
