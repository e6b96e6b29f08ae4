//! Cyclic Jacobi eigensolver for Hermitian matrices in multiple precision.
//!
//! Rotations are applied while any off-diagonal entry exceeds a relative
//! threshold tied to the working precision, |h_pq|^2 > tol^2 h_pp h_qq,
//! which for positive-definite inputs preserves the relative accuracy of
//! small eigenvalues rather than just the absolute accuracy of large ones.

use rug::{Assign, Complex, Float};

use crate::error::{OracleError, Result};
use crate::matrix::MpMatrix;
use crate::mp::{abs, abs2, conj};

/// Off-diagonal entries below 2^-(prec-48) relative to the geometric mean
/// of their diagonal pair count as annihilated.
const THRESHOLD_MARGIN_BITS: u32 = 48;

/// Eigenvalues (descending) and matching eigenvector columns of a
/// Hermitian matrix. The input is trusted to be Hermitian; only its lower
/// triangle participates in the stopping test, but rotations update both
/// triangles so either can be read afterwards.
pub fn hermitian_eigen(a: &MpMatrix, max_sweeps: usize) -> Result<(Vec<Float>, MpMatrix)> {
    let n = a.rows();
    if n != a.cols() {
        return Err(OracleError::Dimension(format!(
            "eigensolver needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let p = a.prec();
    let mut h = a.clone();
    let mut v = MpMatrix::zeros(p, n, n);
    for i in 0..n {
        v[(i, i)] = Complex::with_val(p, (1, 0));
    }
    if n == 1 {
        return Ok((vec![h[(0, 0)].real().clone()], v));
    }

    let mut tol2 = Float::with_val(p, 1);
    tol2 >>= 2 * (p - THRESHOLD_MARGIN_BITS);

    // Scratch registers reused across all rotations.
    let mut tp = Complex::new(p);
    let mut tq = Complex::new(p);
    let mut t2 = Complex::new(p);
    let mut rhs = Float::new(p);

    let mut converged = false;
    for _ in 0..max_sweeps {
        let mut rotations = 0usize;
        for pi in 0..n - 1 {
            for qi in pi + 1..n {
                rhs.assign(h[(pi, pi)].real() * h[(qi, qi)].real());
                rhs *= &tol2;
                if abs2(&h[(pi, qi)]) <= rhs {
                    continue;
                }
                rotations += 1;

                // 2x2 Hermitian block [[hpp, b],[conj(b), hqq]] with real
                // diagonal; the annihilating rotation has real cosine c and
                // complex sine sigma = s * b/|b|.
                let beta_abs = abs(&h[(pi, qi)]);
                let phase = Complex::with_val(p, &h[(pi, qi)] / &beta_abs);
                let mut tau = Float::with_val(p, h[(qi, qi)].real() - h[(pi, pi)].real());
                tau /= Float::with_val(p, 2 * &beta_abs);
                let negative = tau.is_sign_negative();
                let abs_tau = tau.clone().abs();
                let mut den = Float::with_val(p, &tau * &tau);
                den += 1;
                den.sqrt_mut();
                den += &abs_tau;
                let mut t = Float::with_val(p, 1) / den;
                if negative {
                    t = -t;
                }
                let mut c = Float::with_val(p, &t * &t);
                c += 1;
                c.sqrt_mut();
                c.recip_mut();
                let s = Float::with_val(p, &t * &c);
                let sigma = Complex::with_val(p, &phase * &s);
                let sigma_c = conj(&sigma);

                // Right multiplication by J on columns (pi, qi).
                for i in 0..n {
                    tp.assign(&h[(i, pi)] * &c);
                    t2.assign(&h[(i, qi)] * &sigma_c);
                    tp -= &t2;
                    tq.assign(&h[(i, pi)] * &sigma);
                    t2.assign(&h[(i, qi)] * &c);
                    tq += &t2;
                    std::mem::swap(&mut h[(i, pi)], &mut tp);
                    std::mem::swap(&mut h[(i, qi)], &mut tq);
                }
                // Left multiplication by J^H on rows (pi, qi).
                for j in 0..n {
                    tp.assign(&h[(pi, j)] * &c);
                    t2.assign(&h[(qi, j)] * &sigma);
                    tp -= &t2;
                    tq.assign(&h[(pi, j)] * &sigma_c);
                    t2.assign(&h[(qi, j)] * &c);
                    tq += &t2;
                    std::mem::swap(&mut h[(pi, j)], &mut tp);
                    std::mem::swap(&mut h[(qi, j)], &mut tq);
                }
                // The block is now diagonal up to rounding; pin it exactly.
                h[(pi, qi)].assign((0, 0));
                h[(qi, pi)].assign((0, 0));
                h[(pi, pi)].mut_imag().assign(0);
                h[(qi, qi)].mut_imag().assign(0);

                // Accumulate the rotation into the eigenvector columns.
                for i in 0..n {
                    tp.assign(&v[(i, pi)] * &c);
                    t2.assign(&v[(i, qi)] * &sigma_c);
                    tp -= &t2;
                    tq.assign(&v[(i, pi)] * &sigma);
                    t2.assign(&v[(i, qi)] * &c);
                    tq += &t2;
                    std::mem::swap(&mut v[(i, pi)], &mut tp);
                    std::mem::swap(&mut v[(i, qi)], &mut tq);
                }
            }
        }
        if rotations == 0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(OracleError::JacobiStall { sweeps: max_sweeps });
    }

    let vals: Vec<Float> = (0..n).map(|i| h[(i, i)].real().clone()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    let mut sorted_v = MpMatrix::zeros(p, n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            sorted_v[(i, new_j)] = v[(i, old_j)].clone();
        }
    }
    let sorted_vals = order.iter().map(|&j| vals[j].clone()).collect();
    Ok((sorted_vals, sorted_v))
}
