//! Scalar helpers over multiple-precision floats and complexes.
//!
//! Everything downstream threads an explicit binary precision; the
//! conversion from a decimal digit budget adds 64 guard bits so that
//! per-operation rounding never eats into the promised digits.

use num_complex::Complex64;
use rug::ops::NegAssign;
use rug::{Complex, Float};

/// Binary precision for a decimal digit budget: ceil(digits*log2(10)) + 64.
pub fn bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

/// Exact embedding of a double-precision complex.
pub fn cpx(prec: u32, v: Complex64) -> Complex {
    Complex::with_val(prec, (v.re, v.im))
}

/// Rounds to double precision.
pub fn to_c64(v: &Complex) -> Complex64 {
    Complex64::new(v.real().to_f64(), v.imag().to_f64())
}

pub fn conj(v: &Complex) -> Complex {
    let mut r = v.clone();
    r.mut_imag().neg_assign();
    r
}

/// |v|^2 as a real scalar.
pub fn abs2(v: &Complex) -> Float {
    let p = v.prec().0;
    let mut t = Float::with_val(p, v.real() * v.real());
    t += Float::with_val(p, v.imag() * v.imag());
    t
}

pub fn abs(v: &Complex) -> Float {
    abs2(v).sqrt()
}

/// Principal argument via atan2.
pub fn arg(v: &Complex) -> Float {
    v.imag().clone().atan2(v.real())
}

/// Unit complex exp(i*phi).
pub fn unit_phase(prec: u32, phi: &Float) -> Complex {
    Complex::with_val(prec, (phi.clone().cos(), phi.clone().sin()))
}

/// a*b + c*d for complex scalars, at the precision of a.
pub fn mul2_add(a: &Complex, b: &Complex, c: &Complex, d: &Complex) -> Complex {
    let p = a.prec().0;
    let mut t = Complex::with_val(p, a * b);
    t += Complex::with_val(p, c * d);
    t
}

/// Relative distance |got - want|/|want| rounded to double, with |want| = 0
/// mapping to 0 when got is also 0 and infinity otherwise.
pub fn rel_err_c64(got: Complex64, want: &Complex) -> f64 {
    let p = want.prec().0;
    let w = abs(want);
    let diff = abs(&(cpx(p, got) - want));
    if w == 0 {
        return if diff == 0 { 0.0 } else { f64::INFINITY };
    }
    (diff / w).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_budget_has_guard_bits() {
        assert!(bits(300) >= 997 + 64);
        assert!(bits(50) >= 167 + 64);
    }

    #[test]
    fn round_trip_and_conj() {
        let v = Complex64::new(1.25, -0.5);
        let m = cpx(128, v);
        assert_eq!(to_c64(&m), v);
        assert_eq!(to_c64(&conj(&m)), v.conj());
        assert!((abs(&m).to_f64() - v.norm()).abs() <= 1e-16 * v.norm());
        assert!((arg(&m).to_f64() - v.arg()).abs() <= 1e-16);
    }

    #[test]
    fn relative_error_measure() {
        let w = cpx(128, Complex64::new(3.0, 4.0));
        assert_eq!(rel_err_c64(Complex64::new(3.0, 4.0), &w), 0.0);
        let e = rel_err_c64(Complex64::new(3.0, 4.0 + 5e-8), &w);
        assert!((e - 1e-8).abs() <= 1e-20);
    }
}
