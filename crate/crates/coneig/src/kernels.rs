//! Cancellation-free scalar kernels for exponent-form pole arithmetic.
//!
//! Poles inside the unit disk are stored as exponents, gamma = exp(-tau) with
//! Re(tau) > 0, so that differences and sums of poles arbitrarily close to
//! each other or to the unit circle can be evaluated with relative error
//! O(eps). Every factorization in this crate routes its difference/sum
//! arithmetic through these kernels.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// A pole gamma = exp(-tau) held as its exponent tau = re_tau + i*im_tau.
///
/// Invariants: re_tau > 0 (the pole is strictly inside the unit circle) and
/// im_tau is normalized into [0, 2*pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPole {
    re_tau: f64,
    im_tau: f64,
}

impl ExponentPole {
    /// Builds a pole exponent, normalizing `im_tau` into [0, 2*pi).
    pub fn new(re_tau: f64, im_tau: f64) -> Result<Self> {
        if !re_tau.is_finite() || re_tau <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "re_tau must be finite and > 0, got {re_tau}"
            )));
        }
        if !im_tau.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "im_tau must be finite, got {im_tau}"
            )));
        }
        let mut im = im_tau.rem_euclid(TAU);
        // rem_euclid can round up to the modulus itself for tiny negatives.
        if im >= TAU {
            im = 0.0;
        }
        Ok(Self { re_tau, im_tau: im })
    }

    /// Recovers the exponent from a pole value strictly inside the unit disk.
    ///
    /// Accuracy is limited by how close |gamma| is to 1; callers that know the
    /// exponent should construct it directly instead.
    pub fn from_gamma(gamma: Complex64) -> Result<Self> {
        let r = gamma.norm();
        if !(r > 0.0 && r < 1.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must satisfy 0 < |gamma| < 1, got |gamma| = {r}"
            )));
        }
        Self::new(-r.ln(), -gamma.arg())
    }

    pub fn re_tau(&self) -> f64 {
        self.re_tau
    }

    pub fn im_tau(&self) -> f64 {
        self.im_tau
    }

    /// tau as a complex number.
    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.re_tau, self.im_tau)
    }

    /// gamma = exp(-tau).
    pub fn gamma(&self) -> Complex64 {
        let r = (-self.re_tau).exp();
        Complex64::new(r * self.im_tau.cos(), -r * self.im_tau.sin())
    }

    /// x = exp(tau) = 1/gamma. Overflows to infinity for re_tau > ~709.
    pub fn x(&self) -> Complex64 {
        let r = self.re_tau.exp();
        Complex64::new(r * self.im_tau.cos(), r * self.im_tau.sin())
    }

    /// y = -exp(-conj(tau)) = -conj(gamma).
    pub fn y(&self) -> Complex64 {
        let r = (-self.re_tau).exp();
        Complex64::new(-r * self.im_tau.cos(), -r * self.im_tau.sin())
    }

    /// 1 - |gamma|^2 = 1 - exp(-2*re_tau), accurate for re_tau down to
    /// the underflow threshold.
    pub fn one_minus_abs_gamma_sq(&self) -> f64 {
        -((-2.0 * self.re_tau).exp_m1())
    }
}

/// Reduces an angle difference into (-pi, pi].
///
/// Differences of normalized im_tau values lie in (-2*pi, 2*pi), where the
/// `%` pass is exact, so shared imaginary offsets cancel exactly before any
/// constant subtraction happens.
pub fn reduce_mod_2pi(d: f64) -> f64 {
    let mut r = d % TAU;
    if r > PI {
        r -= TAU;
    } else if r <= -PI {
        r += TAU;
    }
    r
}

// Reduction that also reports the subtracted multiple of 2*pi, for kernels
// that halve the angle afterwards.
fn reduce_mod_2pi_counted(d: f64) -> (f64, i32) {
    let mut r = d % TAU;
    let mut k = if d.is_finite() { ((d - r) / TAU).round() as i32 } else { 0 };
    if r > PI {
        r -= TAU;
        k += 1;
    } else if r <= -PI {
        r += TAU;
        k -= 1;
    }
    (r, k)
}

// Reciprocals of 1! .. 20!.
const INV_FACT: [f64; 20] = [
    1.0,
    1.0 / 2.0,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
    1.0 / 39916800.0,
    1.0 / 479001600.0,
    1.0 / 6227020800.0,
    1.0 / 87178291200.0,
    1.0 / 1307674368000.0,
    1.0 / 20922789888000.0,
    1.0 / 355687428096000.0,
    1.0 / 6402373705728000.0,
    1.0 / 121645100408832000.0,
    1.0 / 2432902008176640000.0,
];

// |z| below this uses the Taylor branch.
const TAYLOR_THRESHOLD: f64 = 0.5;

pub(crate) fn one_minus_exp_taylor(z: Complex64) -> Complex64 {
    // 1 - exp(z) = -(z + z^2/2 + z^3/6 + ...) = -z * sum_{k>=0} z^k/(k+1)!
    // 20 terms leave truncation below eps relative to |z| for |z| <= 0.5.
    // (The source text displays this expansion without the leading minus
    // sign; the sign here is the analytically correct one.)
    let mut s = Complex64::new(INV_FACT[19], 0.0);
    for k in (0..19).rev() {
        s = s * z + INV_FACT[k];
    }
    -(z * s)
}

pub(crate) fn one_minus_exp_direct(z: Complex64) -> Complex64 {
    // 1 - e^z = (1 - e^x cos y) - i e^x sin y with the real part split as
    // -expm1(x) + 2 e^x sin^2(y/2). Both terms of the real part and the
    // imaginary part are individually relative-accurate (libm reduces sin
    // arguments exactly), and whenever the real part cancels, the imaginary
    // part dominates the modulus, keeping the overall relative error small
    // even for z near nonzero multiples of 2*pi*i.
    let ex = z.re.exp();
    let sh = (0.5 * z.im).sin();
    let re = -z.re.exp_m1() + 2.0 * ex * sh * sh;
    let im = -ex * z.im.sin();
    Complex64::new(re, im)
}

/// Returns 1 - exp(z) with relative error O(eps) for all finite z,
/// including |z| << 1 where direct evaluation would cancel catastrophically.
pub fn one_minus_exp(z: Complex64) -> Complex64 {
    if z.norm_sqr() < TAYLOR_THRESHOLD * TAYLOR_THRESHOLD {
        one_minus_exp_taylor(z)
    } else {
        one_minus_exp_direct(z)
    }
}

// Exponents closer than this (relative, with the angle difference wrapped)
// denote the same pole; the Cauchy matrix would be singular.
pub(crate) const COINCIDENT_TOL: f64 = 4.0 * f64::EPSILON;

/// True when two exponents denote the same pole up to the duplicate
/// tolerance (4 eps relative, angle wrapped mod 2*pi).
pub fn exponents_coincide(a: ExponentPole, b: ExponentPole) -> bool {
    let dr = a.re_tau - b.re_tau;
    let di = reduce_mod_2pi(a.im_tau - b.im_tau);
    let dist = dr.hypot(di);
    let scale = a.re_tau.hypot(a.im_tau).max(b.re_tau.hypot(b.im_tau));
    dist <= COINCIDENT_TOL * scale
}

// z = -tau_j + tau_k with the angle difference wrapped into (-pi, pi].
fn exponent_gap(tau_j: ExponentPole, tau_k: ExponentPole) -> Complex64 {
    Complex64::new(
        tau_k.re_tau - tau_j.re_tau,
        reduce_mod_2pi(tau_k.im_tau - tau_j.im_tau),
    )
}

/// (x_j - x_k)/(x_j + y_k) for x = exp(tau), y = -exp(-conj(tau)),
/// computed entirely through `one_minus_exp`:
///
///   (1 - exp(-tau_j + tau_k)) / (1 - exp(-tau_j - conj(tau_k))).
///
/// Relative error stays O(eps) even when |tau_j - tau_k| << 1.
pub fn ratio_x_diff_over_x_plus_y(tau_j: ExponentPole, tau_k: ExponentPole) -> Result<Complex64> {
    if exponents_coincide(tau_j, tau_k) {
        return Err(Error::CoincidentPoles);
    }
    let zn = exponent_gap(tau_j, tau_k);
    let zd = Complex64::new(
        -(tau_j.re_tau + tau_k.re_tau),
        reduce_mod_2pi(tau_k.im_tau - tau_j.im_tau),
    );
    Ok(one_minus_exp(zn) / one_minus_exp(zd))
}

/// Companion ratio (y_j - y_k)/(y_j + x_k) for the beta recursion:
///
///   exp(-2 re_k) * conj(1 - exp(-tau_j + tau_k)) / (1 - exp(-tau_k - conj(tau_j))).
pub fn ratio_y_diff_over_y_plus_x(tau_j: ExponentPole, tau_k: ExponentPole) -> Result<Complex64> {
    if exponents_coincide(tau_j, tau_k) {
        return Err(Error::CoincidentPoles);
    }
    let zn = exponent_gap(tau_j, tau_k);
    let zd = Complex64::new(
        -(tau_j.re_tau + tau_k.re_tau),
        reduce_mod_2pi(tau_j.im_tau - tau_k.im_tau),
    );
    let scale = (-2.0 * tau_k.re_tau).exp();
    Ok(scale * one_minus_exp(zn).conj() / one_minus_exp(zd))
}

/// 1 - gamma_a * conj(gamma_b) = 1 - exp(-tau_a - conj(tau_b)), the
/// denominator of Cauchy matrix entries.
pub fn one_minus_gamma_product(a: ExponentPole, b: ExponentPole) -> Complex64 {
    let z = Complex64::new(
        -(a.re_tau + b.re_tau),
        reduce_mod_2pi(b.im_tau - a.im_tau),
    );
    one_minus_exp(z)
}

/// gamma_a - gamma_b via exp((tau_a+tau_b)/-2) * 2 sinh((tau_b - tau_a)/2).
///
/// Bitwise antisymmetric in its arguments (up to the measure-zero wrap
/// boundary at angle difference exactly pi).
pub fn gamma_diff(a: ExponentPole, b: ExponentPole) -> Complex64 {
    let mu = Complex64::new(
        -0.5 * (a.re_tau + b.re_tau),
        -0.5 * (a.im_tau + b.im_tau),
    );
    let (dr, k) = reduce_mod_2pi_counted(b.im_tau - a.im_tau);
    let nu = Complex64::new(0.5 * (b.re_tau - a.re_tau), 0.5 * dr);
    // Halving after wrapping shifts nu by k*pi*i; sinh flips sign per pi.
    let s = 2.0 * nu.sinh() * mu.exp();
    if k % 2 == 0 {
        s
    } else {
        -s
    }
}

/// exp(-eta) - gamma for a free complex exponent point eta: the Newton
/// iteration moves eta through the right half-plane and needs the
/// difference to stay accurate when exp(-eta) closes in on the pole.
pub fn exp_point_minus_gamma(eta: Complex64, pole: ExponentPole) -> Complex64 {
    // e^{-eta} - e^{-tau} = -e^{-tau} (1 - e^{tau - eta}); with the
    // iterate's imaginary part kept within one period the argument of
    // one_minus_exp stays in the range its direct branch handles well.
    let z = pole.tau() - eta;
    -pole.gamma() * one_minus_exp(z)
}

/// exp(i*theta) - gamma: the distance from a unit-circle point to a pole,
/// accurate even when the pole hugs the circle.
pub fn circle_point_minus_gamma(theta: f64, pole: ExponentPole) -> Complex64 {
    // e^{i theta} - e^{-tau} = e^{i theta} (1 - exp(-tau - i theta))
    let z = Complex64::new(-pole.re_tau, reduce_mod_2pi(-pole.im_tau - theta));
    Complex64::new(theta.cos(), theta.sin()) * one_minus_exp(z)
}

/// 1 - conj(gamma) * exp(i*theta), the reflected-part denominator on the
/// unit circle.
pub fn one_minus_conj_gamma_circle(theta: f64, pole: ExponentPole) -> Complex64 {
    let z = Complex64::new(-pole.re_tau, reduce_mod_2pi(pole.im_tau + theta));
    one_minus_exp(z)
}

/// 1 - conj(gamma) * exp(-eta), the reflected-part denominator at a free
/// exponent point: 1 - exp(-(conj(tau) + eta)), accurate when exp(-eta)
/// closes in on the mirror point 1/conj(gamma).
pub fn one_minus_conj_gamma_exp(eta: Complex64, pole: ExponentPole) -> Complex64 {
    let z = Complex64::new(
        -(pole.re_tau + eta.re),
        reduce_mod_2pi(pole.im_tau - eta.im),
    );
    one_minus_exp(z)
}
