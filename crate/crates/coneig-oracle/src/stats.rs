//! Error statistics of a double-precision con-eigenvalue decomposition
//! against the multiple-precision reference, plus the serializable report
//! the verification command emits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use coneig::Matrix;

use crate::error::{OracleError, Result};
use crate::gauge::OracleConEig;
use crate::mp::to_c64;

/// Per-pair relative errors. Vectors are compared after rescaling the
/// computed column by reference(i0)/computed(i0) at the reference column's
/// largest component i0, since con-eigenvectors are defined only up to a
/// complex factor.
#[derive(Debug, Clone)]
pub struct ConEigErrors {
    pub lambda_rel: Vec<f64>,
    pub vector_rel: Vec<f64>,
}

impl ConEigErrors {
    pub fn max_lambda_rel(&self) -> f64 {
        self.lambda_rel.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_vector_rel(&self) -> f64 {
        self.vector_rel.iter().copied().fold(0.0, f64::max)
    }
}

pub fn coneig_errors(
    reference: &OracleConEig,
    lambdas: &[f64],
    z: &Matrix,
) -> Result<ConEigErrors> {
    let count = lambdas.len();
    if reference.len() != count || z.cols() != count || z.rows() != reference.z.rows() {
        return Err(OracleError::Dimension(format!(
            "reference {}x{} vs computed {} values, {}x{} vectors",
            reference.z.rows(),
            reference.len(),
            count,
            z.rows(),
            z.cols()
        )));
    }
    let n = z.rows();
    let mut lambda_rel = Vec::with_capacity(count);
    let mut vector_rel = Vec::with_capacity(count);
    for j in 0..count {
        let lam_ref = reference.lambdas[j].to_f64();
        lambda_rel.push((lambdas[j] - lam_ref).abs() / lam_ref);

        let w: Vec<Complex64> = (0..n).map(|i| to_c64(&reference.z[(i, j)])).collect();
        let mut i0 = 0;
        for (i, wi) in w.iter().enumerate() {
            if wi.norm_sqr() > w[i0].norm_sqr() {
                i0 = i;
            }
        }
        let scale = w[i0] / z[(i0, j)];
        let mut diff2 = 0.0;
        let mut ref2 = 0.0;
        for (i, wi) in w.iter().enumerate() {
            diff2 += (wi - scale * z[(i, j)]).norm_sqr();
            ref2 += wi.norm_sqr();
        }
        vector_rel.push((diff2 / ref2).sqrt());
    }
    Ok(ConEigErrors {
        lambda_rel,
        vector_rel,
    })
}

/// One random matrix's comparison outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixReport {
    pub seed: u64,
    pub n: usize,
    pub max_lambda_rel: f64,
    pub max_vector_rel: f64,
    pub pass: bool,
}

/// Outcome of a whole verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub digits: u32,
    pub tolerance: f64,
    pub matrices: Vec<MatrixReport>,
    pub worst_lambda_rel: f64,
    pub worst_vector_rel: f64,
    pub all_pass: bool,
}

impl EnsembleReport {
    pub fn from_matrices(digits: u32, tolerance: f64, matrices: Vec<MatrixReport>) -> Self {
        let worst_lambda_rel = matrices
            .iter()
            .map(|m| m.max_lambda_rel)
            .fold(0.0, f64::max);
        let worst_vector_rel = matrices
            .iter()
            .map(|m| m.max_vector_rel)
            .fold(0.0, f64::max);
        let all_pass = matrices.iter().all(|m| m.pass);
        Self {
            digits,
            tolerance,
            matrices,
            worst_lambda_rel,
            worst_vector_rel,
            all_pass,
        }
    }
}
