//! Multiple-precision assembly of the Cauchy matrix of a rational function.
//!
//! The double pipeline never forms this matrix; the reference route builds
//! it explicitly from the exact binary values of the stored exponents and
//! residues:
//!
//!   C_ij = s_i conj(s_j) / (1 - gamma_i conj(gamma_j)),
//!
//! with s_i the principal square root of alpha_i and gamma_i = exp(-tau_i).
//! At a few hundred digits the plain subtraction in the denominator keeps
//! far more accuracy than the comparison tolerances need, even for poles
//! within 1e-10 of the unit circle.

use rug::Complex;

use coneig::RationalFunction;

use crate::error::{OracleError, Result};
use crate::matrix::MpMatrix;
use crate::mp::{conj, cpx};

/// The assembled matrix together with the scalars it was built from.
#[derive(Debug, Clone)]
pub struct MpCauchy {
    pub c: MpMatrix,
    /// Principal square roots of the residues.
    pub s: Vec<Complex>,
    /// Pole values gamma_i = exp(-tau_i).
    pub gamma: Vec<Complex>,
    pub prec: u32,
}

pub fn cauchy_mp(f: &RationalFunction, prec: u32) -> Result<MpCauchy> {
    let n = f.n();
    if n == 0 {
        return Err(OracleError::Dimension("function has no terms".into()));
    }
    let mut s = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    for &(pole, alpha) in &f.terms {
        s.push(cpx(prec, alpha).sqrt());
        let minus_tau = Complex::with_val(prec, (-pole.re_tau(), -pole.im_tau()));
        gamma.push(minus_tau.exp());
    }
    let mut c = MpMatrix::zeros(prec, n, n);
    for i in 0..n {
        for j in 0..n {
            let num = Complex::with_val(prec, &s[i] * &conj(&s[j]));
            let mut den = Complex::with_val(prec, &gamma[i] * &conj(&gamma[j]));
            den = -den;
            den += 1;
            c[(i, j)] = num / den;
        }
    }
    Ok(MpCauchy { c, s, gamma, prec })
}
