//! One-sided Jacobi SVD of a square triangular factor, oriented to return
//! the left singular vectors as an accumulated product of plane rotations.
//!
//! Working on A = R^H, rotations are applied to column pairs of A until all
//! columns are numerically orthogonal; the same rotations accumulate into
//! V, and A V = W with W^H W diagonal gives R = V Sigma U^H, so V is the
//! left singular vector matrix of R. Because V is a product of exact plane
//! rotations it stays unitary to machine precision no matter how strongly
//! graded R is, which is what the downstream diagonal divisions require.
//! Singular values are read off as scaled column norms of W, preserving
//! their relative accuracy across hundreds of orders of magnitude.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{cdot, scaled_norm, Matrix};

/// Left singular vectors and singular values of a square matrix R:
/// R = U_l diag(sigma) U_r^H with sigma sorted in decreasing order.
/// Sweeps stop when every column pair of the working matrix satisfies
/// |w_p^H w_q| <= m eps ||w_p|| ||w_q||.
pub fn jacobi_svd_left(r: &Matrix, max_sweeps: usize) -> Result<(Matrix, Vec<f64>)> {
    let m = r.rows();
    if r.cols() != m {
        return Err(Error::InvalidParameter("Jacobi SVD input must be square".into()));
    }
    // A = R^H.
    let mut a = Matrix::zeros(m, m);
    for j in 0..m {
        for i in 0..m {
            a[(i, j)] = r[(j, i)].conj();
        }
    }
    let mut v = Matrix::identity(m);
    let tol = m as f64 * f64::EPSILON;

    let mut converged = m < 2;
    for _sweep in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..m - 1 {
            for q in p + 1..m {
                let gamma = cdot(a.col(p), a.col(q));
                let g = gamma.norm();
                if g == 0.0 {
                    continue;
                }
                // Norms via scaling so strongly graded columns never
                // underflow in the convergence test.
                let na = scaled_norm(a.col(p));
                let nb = scaled_norm(a.col(q));
                if g <= tol * na * nb {
                    continue;
                }
                rotated = true;
                let theta = gamma.arg();
                // zeta = (||a_q||^2 - ||a_p||^2) / (2 |gamma|), in factored
                // form to dodge underflow of the squared norms.
                let zeta = (nb - na) * (nb + na) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    -1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phase = Complex64::new(theta.cos(), -theta.sin());
                rotate_pair(&mut a, p, q, c, s, phase);
                rotate_pair(&mut v, p, q, c, s, phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: max_sweeps });
    }

    let mut sigma: Vec<f64> = (0..m).map(|j| scaled_norm(a.col(j))).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
    let mut u_l = Matrix::zeros(m, m);
    for (k, &j) in order.iter().enumerate() {
        u_l.col_mut(k).copy_from_slice(v.col(j));
    }
    sigma = order.iter().map(|&j| sigma[j]).collect();
    Ok((u_l, sigma))
}

/// Applies the plane rotation
///   col_p <- c col_p + s phase col_q
///   col_q <- -s col_p + c phase col_q
/// (phase = e^{-i theta}), annihilating the chosen off-diagonal product.
fn rotate_pair(mat: &mut Matrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (cp, cq) = mat.two_cols_mut(p, q);
    for (ap, aq) in cp.iter_mut().zip(cq.iter_mut()) {
        let old_p = *ap;
        let rotated_q = phase * *aq;
        *ap = c * old_p + s * rotated_q;
        *aq = -s * old_p + c * rotated_q;
    }
}
