//! Reference con-eigenvalue decomposition at a requested digit budget.
//!
//! For a Hermitian positive-definite C the pairs C u = lambda conj(u)
//! are recovered from ordinary Hermitian eigenproblems:
//!
//!   conj(C) C  is similar to  H = S C S,  S = conj(C)^(1/2),
//!
//! so H v = lambda^2 v gives lambda as the positive square root and
//! u = S v up to a phase. The phase is fixed so that sum_k u_k^2 is real
//! and nonnegative, matching the double pipeline's convention, and each
//! pair must pass the residual test
//!
//!   ||C u - lambda conj(u)|| <= 10^(-digits/2) * lambda * ||u||,
//!
//! otherwise the digit budget is declared exhausted for this input.

use rug::ops::PowAssign;
use rug::{Assign, Complex, Float};

use coneig::RationalFunction;

use crate::assemble::cauchy_mp;
use crate::eigen::hermitian_eigen;
use crate::error::{OracleError, Result};
use crate::matrix::MpMatrix;
use crate::mp::{abs2, arg, bits, conj, unit_phase};

const MAX_SWEEPS: usize = 60;

/// Con-eigenvalues (descending) with unit-norm con-eigenvector columns.
#[derive(Debug, Clone)]
pub struct OracleConEig {
    pub lambdas: Vec<Float>,
    pub z: MpMatrix,
    pub digits: u32,
}

impl OracleConEig {
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Eigenvalues rounded to double precision.
    pub fn lambdas_f64(&self) -> Vec<f64> {
        self.lambdas.iter().map(|l| l.to_f64()).collect()
    }
}

pub fn oracle_coneig(f: &RationalFunction, digits: u32) -> Result<OracleConEig> {
    let cauchy = cauchy_mp(f, bits(digits))?;
    oracle_coneig_of(&cauchy.c, digits)
}

/// Same computation starting from an already assembled Hermitian matrix.
pub fn oracle_coneig_of(c: &MpMatrix, digits: u32) -> Result<OracleConEig> {
    let p = c.prec();
    let n = c.rows();

    // S = conj(C)^(1/2) through the eigendecomposition of conj(C).
    let cbar = c.conj();
    let (mu, q) = hermitian_eigen(&cbar, MAX_SWEEPS)?;
    for (i, m) in mu.iter().enumerate() {
        if !(*m > 0) {
            return Err(OracleError::NotPositive {
                step: i,
                value: m.to_f64(),
            });
        }
    }
    let mut s = MpMatrix::zeros(p, n, n);
    let qh = q.hermitian_transpose();
    let roots: Vec<Float> = mu.iter().map(|m| m.clone().sqrt()).collect();
    let mut t = Complex::new(p);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(p);
            for k in 0..n {
                t.assign(&q[(i, k)] * &qh[(k, j)]);
                t *= &roots[k];
                acc += &t;
            }
            s[(i, j)] = acc;
        }
    }

    // H = S C S, re-symmetrized to clear rounding skew before Jacobi.
    let mut h = s.mul(&c.mul(&s));
    let hh = h.hermitian_transpose();
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] += &hh[(i, j)];
            h[(i, j)] /= 2;
        }
    }

    let (mu2, v) = hermitian_eigen(&h, MAX_SWEEPS)?;
    for (i, m) in mu2.iter().enumerate() {
        if !(*m > 0) {
            return Err(OracleError::NotPositive {
                step: i,
                value: m.to_f64(),
            });
        }
    }
    let lambdas: Vec<Float> = mu2.iter().map(|m| m.clone().sqrt()).collect();

    // u_j = S v_j, phase-fixed and normalized.
    let mut z = MpMatrix::zeros(p, n, n);
    for j in 0..n {
        let mut u = s.mul_vec(&v.col(j));
        let mut sum_sq = Complex::new(p);
        let mut norm2 = Float::new(p);
        for uk in &u {
            sum_sq += Complex::with_val(p, uk * uk);
            norm2 += abs2(uk);
        }
        let mut half_arg = arg(&sum_sq);
        half_arg /= -2;
        let rot = unit_phase(p, &half_arg);
        let scale = norm2.sqrt();
        for uk in &mut u {
            *uk *= &rot;
            *uk /= &scale;
        }
        for (i, uk) in u.into_iter().enumerate() {
            z[(i, j)] = uk;
        }
    }

    let out = OracleConEig {
        lambdas,
        z,
        digits,
    };
    check_residuals(c, &out)?;
    Ok(out)
}

/// Residual test of every pair against the digit budget's half-way mark.
fn check_residuals(c: &MpMatrix, dec: &OracleConEig) -> Result<()> {
    let p = c.prec();
    let n = c.rows();
    let mut threshold = Float::with_val(p, 10);
    threshold.pow_assign(-(dec.digits as i32) / 2);
    for j in 0..dec.len() {
        let col = dec.z.col(j);
        let cu = c.mul_vec(&col);
        let mut res2 = Float::new(p);
        let mut norm2 = Float::new(p);
        for i in 0..n {
            let mut r = cu[i].clone();
            let mut lc = conj(&col[i]);
            lc *= &dec.lambdas[j];
            r -= &lc;
            res2 += abs2(&r);
            norm2 += abs2(&col[i]);
        }
        let res = res2.sqrt();
        let mut allowed = norm2.sqrt();
        allowed *= &dec.lambdas[j];
        allowed *= &threshold;
        if res > allowed {
            return Err(OracleError::PrecisionExhausted {
                pair: j,
                residual: res.to_f64(),
                threshold: allowed.to_f64(),
            });
        }
    }
    Ok(())
}
