//! Exponential-sum approximations of inverse powers, and rational
//! functions on the unit circle built from them.
//!
//! The identity 1/n^p = (1/(p-1)!) * integral over t of e^{pt - n e^t}
//! discretized with uniform step h gives
//!
//!   1/n^p ~ sum_{m=-M1}^{M2} a_m e^{-tau_m n},
//!   tau_m = e^{h m},  a_m = h e^{p h m} / (p-1)!,
//!
//! accurate to roughly |Gamma(p + 2 pi i / h)| uniformly over n >= 1. The
//! node count grows like log(1/eps) * log of the n-range, which makes the
//! sums deliberately longer than necessary: ideal inputs for a reduction
//! pass. Mapping each exponential to a pole of a conjugate-symmetric
//! rational function turns such a sum into a test function on the circle
//! whose Fourier coefficients are exactly the sampled sum.

use num_complex::Complex64;

use crate::cauchy::RationalFunction;
use crate::error::{Error, Result};
use crate::kernels::ExponentPole;

/// Largest supported inverse power: factorials and e^{phm} stay in a
/// comfortable f64 range for all practical parameter sets below it.
const MAX_POWER: u32 = 20;
/// exp() overflows just above this argument.
const EXP_ARG_LIMIT: f64 = 709.0;

/// Parameters of the discretized integral: uniform step `h`, node index
/// running from `-m1` to `m2` inclusive, inverse power `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumParams {
    pub h: f64,
    pub m1: u32,
    pub m2: u32,
    pub p: u32,
}

/// One term `weight * e^{-tau * n}` of an exponential sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumTerm {
    pub tau: f64,
    pub weight: f64,
}

/// Evaluates the sum at argument `x` (usually a positive integer).
pub fn expsum_eval(terms: &[ExpSumTerm], x: f64) -> f64 {
    terms.iter().map(|t| t.weight * (-t.tau * x).exp()).sum()
}

/// Builds the exponential-sum approximation of 1/n^p for the given
/// parameters. Terms are ordered by increasing index m, so tau is
/// strictly increasing.
pub fn inverse_power_expsum(params: &ExpSumParams) -> Result<Vec<ExpSumTerm>> {
    let ExpSumParams { h, m1, m2, p } = *params;
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "step h must be positive and finite, got {h}"
        )));
    }
    if p < 1 || p > MAX_POWER {
        return Err(Error::InvalidParameter(format!(
            "power p must be in 1..={MAX_POWER}, got {p}"
        )));
    }
    let top = h * m2 as f64;
    if top > EXP_ARG_LIMIT || (p as f64) * top > EXP_ARG_LIMIT {
        return Err(Error::Overflow(format!(
            "exp argument {} out of range for h = {h}, m2 = {m2}, p = {p}",
            (p as f64) * top
        )));
    }
    let mut factorial = 1.0f64;
    for k in 2..p {
        factorial *= k as f64;
    }
    let mut terms = Vec::with_capacity(m1 as usize + m2 as usize + 1);
    for m in -(m1 as i64)..=(m2 as i64) {
        let hm = h * m as f64;
        let tau = hm.exp();
        let weight = h * (p as f64 * hm).exp() / factorial;
        if !tau.is_finite() || !weight.is_finite() {
            return Err(Error::Overflow(format!(
                "non-finite term at m = {m}: tau = {tau}, weight = {weight}"
            )));
        }
        if weight == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "weight underflowed to zero at m = {m}; shrink m1 or p"
            )));
        }
        terms.push(ExpSumTerm { tau, weight });
    }
    Ok(terms)
}

/// Turns an exponential sum into a conjugate-symmetric rational function
/// on the unit circle whose positive Fourier coefficients are
///
///   c_n = sum_m w_m e^{-(tau_m + 2 pi i x0) n},  n >= 1,
///
/// i.e. the sum sampled at the integers, with the singular point of the
/// series placed at circle position x0. The constant term is `alpha0`;
/// the function is real on the circle whenever alpha0 is real.
pub fn rational_from_expsum(
    terms: &[ExpSumTerm],
    x0: f64,
    alpha0: Complex64,
) -> Result<RationalFunction> {
    if !x0.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "x0 must be finite, got {x0}"
        )));
    }
    let im_tau = -std::f64::consts::TAU * x0;
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        if t.weight == 0.0 {
            return Err(Error::ZeroResidue { index: i });
        }
        let pole = ExponentPole::new(t.tau, im_tau)?;
        // Matching c_n = conj(alpha) conj(gamma)^{n-1} against
        // w gamma_bar^n gives alpha = conj(w) gamma.
        let residue = Complex64::new(t.weight, 0.0).conj() * pole.gamma();
        out.push((pole, residue));
    }
    Ok(RationalFunction {
        alpha0,
        terms: out,
    })
}
