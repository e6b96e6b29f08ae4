//! Multiple-precision refinement of the unit-disk roots that become the
//! poles of a reduced function.
//!
//! Given a con-eigenpair (lambda, u) of the Cauchy matrix of f, the
//! auxiliary function
//!
//!   w(z) = sum_i conj(s_i) u_i / (1 - conj(gamma_i) z)
//!
//! (the 1/lambda scale dropped, roots are unaffected) has the reduced
//! poles as its zeros inside the disk; the con-eigen relation pins its
//! node values to w(gamma_i) = lambda conj(u_i) / s_i, so this and only
//! this conjugation pattern is determined by the decomposition. Newton
//! iteration at working precision, started from the double-precision
//! roots, converges in a handful of steps and exposes how accurate the
//! doubles really are.

use rug::{Assign, Complex, Float};

use coneig::ExponentPole;

use crate::assemble::MpCauchy;
use crate::error::{OracleError, Result};
use crate::gauge::OracleConEig;
use crate::mp::{abs, abs2, conj};

const MAX_NEWTON: usize = 80;

/// Weights conj(s_i) u_i of the auxiliary function for one con-eigenpair.
pub fn aux_weights(cauchy: &MpCauchy, dec: &OracleConEig, pair: usize) -> Vec<Complex> {
    let p = cauchy.prec;
    (0..cauchy.s.len())
        .map(|i| Complex::with_val(p, conj(&cauchy.s[i]) * &dec.z[(i, pair)]))
        .collect()
}

/// w(z) and w'(z) by direct summation.
fn eval_aux(
    weights: &[Complex],
    gamma: &[Complex],
    z: &Complex,
    p: u32,
) -> (Complex, Complex) {
    let mut w = Complex::new(p);
    let mut dw = Complex::new(p);
    let mut den = Complex::new(p);
    for (c, g) in weights.iter().zip(gamma) {
        let gc = conj(g);
        den.assign(&gc * z);
        den = -den;
        den += 1;
        let term = Complex::with_val(p, c / &den);
        w += &term;
        let mut slope = Complex::with_val(p, &term * &gc);
        slope /= &den;
        dw += &slope;
    }
    (w, dw)
}

/// Newton-refines each starting exponent to working precision and returns
/// the exponents -ln(z) of the refined roots (imaginary parts in the
/// principal branch (-pi, pi]).
pub fn refine_roots(
    cauchy: &MpCauchy,
    dec: &OracleConEig,
    pair: usize,
    starts: &[ExponentPole],
) -> Result<Vec<Complex>> {
    let p = cauchy.prec;
    let weights = aux_weights(cauchy, dec, pair);
    // Converged when the Newton step falls below 2^-(3p/4) relative: well
    // past any comparison tolerance, while immune to the last-bit jitter
    // that could keep a 2^-p test oscillating forever.
    let mut step_tol = Float::with_val(p, 1);
    step_tol >>= 3 * p / 4;

    let mut out = Vec::with_capacity(starts.len());
    for (si, start) in starts.iter().enumerate() {
        let minus_eta = Complex::with_val(p, (-start.re_tau(), -start.im_tau()));
        let mut z = minus_eta.exp();
        let mut settled = false;
        for _ in 0..MAX_NEWTON {
            let (w, dw) = eval_aux(&weights, &cauchy.gamma, &z, p);
            if abs2(&dw) == 0 {
                break;
            }
            let step = Complex::with_val(p, &w / &dw);
            let small = abs(&step) <= Float::with_val(p, &step_tol * &abs(&z));
            z -= &step;
            if small {
                settled = true;
                break;
            }
        }
        if !settled {
            return Err(OracleError::NewtonStall { start: si });
        }
        let eta = -(z.ln());
        out.push(eta);
    }
    Ok(out)
}

/// Relative error of the real part and wrapped absolute error of the
/// imaginary part of a double exponent against a refined one.
pub fn exponent_errors(pole: ExponentPole, refined: &Complex) -> (f64, f64) {
    let re_ref = refined.real().to_f64();
    let re_rel = if re_ref != 0.0 {
        ((pole.re_tau() - re_ref) / re_ref).abs()
    } else {
        f64::INFINITY
    };
    let im_err = coneig::kernels::reduce_mod_2pi(pole.im_tau() - refined.imag().to_f64()).abs();
    (re_rel, im_err)
}
