//! Con-eigenvalue decomposition C u = lambda conj(u) of a Hermitian
//! positive-definite matrix given through a rank-revealing decomposition
//! C = X D^2 X^*.
//!
//! The route never forms C: the Gram matrix G = D (X^T X) D of the
//! con-eigenproblem is factored by pivoted QR, the triangular factor's
//! left singular vectors come from one-sided Jacobi, and the diagonal
//! scales are divided out exactly where the algebra says they cancel.
//! That keeps every con-eigenvalue above the truncation threshold
//! accurate relative to itself, not merely relative to the largest one.

use num_complex::Complex64;

use crate::cauchy::{eval_entry, CauchyGenerators};
use crate::cholesky::partial_cholesky;
use crate::error::{Error, Result};
use crate::matrix::{scaled_norm, Matrix};
use crate::qr::{qr_householder_pivoted, PivotedQr};
use crate::svd::jacobi_svd_left;

/// Columns whose relative gap min |l_i - l_j|/(l_i + l_j) falls below this
/// are flagged clustered: their individual vectors are ill-determined even
/// though the span and the values remain accurate.
pub const CLUSTER_RELGAP: f64 = 1e-8;

const JACOBI_MAX_SWEEPS: usize = 30;

/// Intermediate factors of the scaled Gram matrix G = D (X^T X) D.
#[derive(Debug, Clone)]
pub struct GramFactors {
    /// The Gram matrix itself (m x m, complex symmetric).
    pub g: Matrix,
    /// Pivoted QR of g: g[row_perm[i], col_perm[j]] = (Q R)[i, j].
    pub qr: PivotedQr,
    /// Left singular vectors of R, an accumulated rotation product.
    pub u_l: Matrix,
    /// Singular values of R, decreasing: the con-eigenvalues.
    pub sigma: Vec<f64>,
}

/// Con-eigenvalue decomposition: lambdas[j] with unit vectors z(:,j)
/// satisfying C z ~= lambda conj(z), lambdas decreasing, and every column
/// phase-normalized so that sum_k z_k^2 is real and nonnegative.
#[derive(Debug, Clone)]
pub struct ConEigDecomposition {
    pub lambdas: Vec<f64>,
    pub z: Matrix,
    /// relgap_j = min_{l != j} |lambda_j - lambda_l|/(lambda_j + lambda_l),
    /// computed before any boundary truncation.
    pub relgaps: Vec<f64>,
    pub clustered: Vec<bool>,
    /// Dense residuals ||C z_j - lambda_j conj(z_j)||_2, filled on demand.
    pub residuals: Option<Vec<f64>>,
}

impl ConEigDecomposition {
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Dense residual check against the full matrix; O(n^2 len).
    pub fn compute_residuals(&mut self, g: &CauchyGenerators) {
        let n = self.z.rows();
        let mut res = Vec::with_capacity(self.len());
        for j in 0..self.len() {
            let zj = self.z.col(j);
            let mut r = vec![Complex64::new(0.0, 0.0); n];
            for (i, ri) in r.iter_mut().enumerate() {
                let mut s = Complex64::new(0.0, 0.0);
                for (k, zk) in zj.iter().enumerate() {
                    s += eval_entry(g, i, k) * zk;
                }
                *ri = s - self.lambdas[j] * zj[i].conj();
            }
            res.push(scaled_norm(&r));
        }
        self.residuals = Some(res);
    }
}

/// Factors the scaled Gram matrix of the rank-revealing decomposition.
pub fn gram_factors(x: &Matrix, d: &[f64]) -> Result<GramFactors> {
    let m = x.cols();
    if d.len() != m || x.rows() < m {
        return Err(Error::InvalidParameter(
            "factor/scale dimensions inconsistent".into(),
        ));
    }
    if d.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "diagonal scales must be positive and finite".into(),
        ));
    }
    let xtx = x.transpose_times_self();
    let mut g = Matrix::zeros(m, m);
    for j in 0..m {
        for i in 0..m {
            g[(i, j)] = d[i] * xtx[(i, j)] * d[j];
        }
    }
    let qr = qr_householder_pivoted(&g)?;
    let (u_l, sigma) = jacobi_svd_left(&qr.r, JACOBI_MAX_SWEEPS)?;
    Ok(GramFactors { g, qr, u_l, sigma })
}

/// C z approx= lambda conj(z) through the truncated factors only: O(n m).
fn truncated_matvec(x: &Matrix, d: &[f64], w: &[Complex64]) -> Vec<Complex64> {
    let mut t = x.conj_transpose_mul_vec(w);
    for (tk, dk) in t.iter_mut().zip(d) {
        *tk *= dk * dk;
    }
    x.mul_vec(&t)
}

fn sub_scaled_conj(a: &[Complex64], lambda: f64, b: &[Complex64]) -> f64 {
    let diff: Vec<Complex64> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| ai - lambda * bi.conj())
        .collect();
    scaled_norm(&diff)
}

/// Con-eigenvalue decomposition from a rank-revealing decomposition
/// C = X D^2 X^* (X n x m with unit-diagonal trapezoidal structure up to
/// row permutation, D positive decreasing).
pub fn coneig_rrd(x: &Matrix, d: &[f64]) -> Result<ConEigDecomposition> {
    let (n, m) = (x.rows(), x.cols());
    let gf = gram_factors(x, d)?;
    let d_r: Vec<f64> = gf.qr.row_perm.iter().map(|&i| d[i]).collect();
    let d_c: Vec<f64> = gf.qr.col_perm.iter().map(|&i| d[i]).collect();

    // R1 = D_r^{-1} R D_c^{-1}: the well-conditioned triangular core.
    let mut r1 = Matrix::zeros(m, m);
    for j in 0..m {
        for i in 0..=j {
            r1[(i, j)] = gf.qr.r[(i, j)] / (d_r[i] * d_c[j]);
        }
    }
    // X1 = D_r^{-1} U_l Sigma^{1/2}, entrywise.
    let mut x1 = Matrix::zeros(m, m);
    for j in 0..m {
        let sq = gf.sigma[j].sqrt();
        for i in 0..m {
            x1[(i, j)] = gf.u_l[(i, j)] * sq / d_r[i];
        }
    }
    // Y1 = R1^{-1} X1 by back substitution.
    let mut y1 = x1;
    for j in 0..m {
        let col = y1.col_mut(j);
        for i in (0..m).rev() {
            let mut s = col[i];
            for k in i + 1..m {
                s -= r1[(i, k)] * col[k];
            }
            col[i] = s / r1[(i, i)];
        }
    }
    // Z = (X with columns in pivot order) Y1.
    let mut xp = Matrix::zeros(n, m);
    for k in 0..m {
        xp.col_mut(k).copy_from_slice(x.col(gf.qr.col_perm[k]));
    }
    let mut z = xp.mul(&y1);

    // Phase-normalize each column: sum z_k^2 real and nonnegative.
    for j in 0..m {
        let col = z.col_mut(j);
        let q: Complex64 = col.iter().map(|&c| c * c).sum();
        if q.norm() > 0.0 {
            let half = Complex64::from_polar(1.0, -q.arg() / 2.0);
            for c in col.iter_mut() {
                *c *= half;
            }
        }
    }

    // Convention probe: the algebra determines the vectors up to global
    // conjugation. Check which of z, conj(z) satisfies C w = lambda
    // conj(w) on the dominant column, against the truncated
    // reconstruction of C.
    {
        let w: Vec<Complex64> = z.col(0).to_vec();
        let wb: Vec<Complex64> = w.iter().map(|c| c.conj()).collect();
        let lam = gf.sigma[0];
        let r_plain = sub_scaled_conj(&truncated_matvec(x, d, &w), lam, &w);
        let r_conj = sub_scaled_conj(&truncated_matvec(x, d, &wb), lam, &wb);
        if r_conj < r_plain {
            for j in 0..m {
                for c in z.col_mut(j).iter_mut() {
                    *c = c.conj();
                }
            }
        }
    }

    // Unit columns.
    for j in 0..m {
        let col = z.col_mut(j);
        let nrm = scaled_norm(col);
        if nrm > 0.0 {
            for c in col.iter_mut() {
                *c /= nrm;
            }
        }
    }

    let lambdas = gf.sigma.clone();
    let relgaps = relative_gaps(&lambdas);
    let clustered = relgaps.iter().map(|&g| g < CLUSTER_RELGAP).collect();
    Ok(ConEigDecomposition {
        lambdas,
        z,
        relgaps,
        clustered,
        residuals: None,
    })
}

fn relative_gaps(lambdas: &[f64]) -> Vec<f64> {
    let m = lambdas.len();
    (0..m)
        .map(|i| {
            let mut g = f64::INFINITY;
            for j in 0..m {
                if j != i {
                    let s = lambdas[i] + lambdas[j];
                    if s > 0.0 {
                        g = g.min((lambdas[i] - lambdas[j]).abs() / s);
                    }
                }
            }
            g
        })
        .collect()
}

/// Drops columns past the delta boundary: everything above delta is kept
/// plus the first value at or below it (the pair the reduction consumes).
/// A truncated factorization that resolved no value at or below delta
/// cannot certify that pair.
fn truncate_to_boundary(
    dec: &mut ConEigDecomposition,
    delta: f64,
    factorization_truncated: bool,
) -> Result<()> {
    let total = dec.len();
    let above = dec.lambdas.iter().filter(|&&l| l > delta).count();
    if above == total {
        if factorization_truncated {
            return Err(Error::DeltaTooSmall { delta });
        }
        return Ok(());
    }
    let keep = (above + 1).min(total);
    dec.lambdas.truncate(keep);
    dec.relgaps.truncate(keep);
    dec.clustered.truncate(keep);
    if let Some(r) = &mut dec.residuals {
        r.truncate(keep);
    }
    if keep < total {
        let mut zk = Matrix::zeros(dec.z.rows(), keep);
        for j in 0..keep {
            zk.col_mut(j).copy_from_slice(dec.z.col(j));
        }
        dec.z = zk;
    }
    Ok(())
}

/// Full pipeline from generators: pivoted partial Cholesky truncated at
/// delta, then the con-eigenvalue decomposition of the factors, keeping
/// every value above delta plus the boundary pair.
pub fn con_eigvector(g: &CauchyGenerators, delta: f64) -> Result<ConEigDecomposition> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive and finite, got {delta}"
        )));
    }
    let pc = partial_cholesky(g, delta)?;
    let x = pc.scattered_factor();
    let mut dec = coneig_rrd(&x, pc.d())?;
    // An exhausted factorization (full rank, or stopped at an exactly
    // zero Schur diagonal) resolved every representable value, so all
    // values sitting above delta is a legitimate complete answer there.
    truncate_to_boundary(&mut dec, delta, !pc.exhausted())?;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::{generators_from_rational, RationalFunction};
    use crate::kernels::ExponentPole;
    use crate::matrix::cdot;
    use std::f64::consts::TAU;

    #[test]
    fn real_symmetric_two_by_two() {
        // C = [[2, 1], [1, 2]]: con-eigenvalues {3, 1} with real vectors
        // (1, 1)/sqrt(2) and (1, -1)/sqrt(2).
        let mut x = Matrix::identity(2);
        x[(1, 0)] = Complex64::new(0.5, 0.0);
        let d = [2f64.sqrt(), 1.5f64.sqrt()];
        let dec = coneig_rrd(&x, &d).unwrap();
        assert!((dec.lambdas[0] - 3.0).abs() <= 1e-12);
        assert!((dec.lambdas[1] - 1.0).abs() <= 1e-12);
        let e0 = [
            Complex64::new(1.0 / 2f64.sqrt(), 0.0),
            Complex64::new(1.0 / 2f64.sqrt(), 0.0),
        ];
        let e1 = [e0[0], -e0[1]];
        assert!((cdot(&e0, dec.z.col(0)).norm() - 1.0).abs() <= 1e-12);
        assert!((cdot(&e1, dec.z.col(1)).norm() - 1.0).abs() <= 1e-12);
        assert!((dec.relgaps[0] - 0.5).abs() <= 1e-12);
        assert!(!dec.clustered[0]);
    }

    #[test]
    fn hermitian_with_equal_con_eigenvalues() {
        // C = [[2, i], [-i, 2]]: conj(C) C = 3 I, so both con-eigenvalues
        // are sqrt(3), distinct from the eigenvalues 3 and 1. With a
        // multiple value the individual vectors are ill-determined (any
        // unitary mix of the singular subspace can come out), which is
        // exactly what the clustered flags communicate; only the values
        // are asserted.
        let mut x = Matrix::identity(2);
        x[(1, 0)] = Complex64::new(0.0, -0.5);
        let d = [2f64.sqrt(), 1.5f64.sqrt()];
        let dec = coneig_rrd(&x, &d).unwrap();
        let s3 = 3f64.sqrt();
        assert!((dec.lambdas[0] - s3).abs() <= 1e-12);
        assert!((dec.lambdas[1] - s3).abs() <= 1e-12);
        assert!(dec.clustered[0] && dec.clustered[1]);
        assert!(dec.relgaps[0] <= 1e-12);
    }

    #[test]
    fn phase_convention_holds() {
        let f = random_function(10, 21);
        let g = generators_from_rational(&f).unwrap();
        let dec = con_eigvector(&g, 1e-12).unwrap();
        for j in 0..dec.len() {
            let q: Complex64 = dec.z.col(j).iter().map(|&c| c * c).sum();
            if q.norm() > 1e-8 {
                assert!(
                    q.im.abs() <= 1e-10 * q.norm(),
                    "bilinear sum not real at {j}: {q}"
                );
                assert!(q.re >= 0.0);
            }
            let nrm = scaled_norm(dec.z.col(j));
            assert!((nrm - 1.0).abs() <= 1e-13);
        }
        // Decreasing values.
        for j in 1..dec.len() {
            assert!(dec.lambdas[j] <= dec.lambdas[j - 1]);
        }
    }

    #[test]
    fn residuals_small_against_dense_matrix() {
        let f = random_function(12, 5);
        let g = generators_from_rational(&f).unwrap();
        let mut dec = con_eigvector(&g, 1e-13).unwrap();
        dec.compute_residuals(&g);
        let res = dec.residuals.as_ref().unwrap();
        let lam0 = dec.lambdas[0];
        for (j, &r) in res.iter().enumerate() {
            // Dense-matvec verification carries an absolute rounding floor
            // of order n eps lambda_1; values near that floor cannot be
            // checked more tightly here (the high-precision gauge does).
            assert!(
                r <= 1e-12 * lam0,
                "residual {r:e} too large at {j} (lambda_1 = {lam0:e})"
            );
        }
        // The convention is genuinely two-sided: for a complex vector the
        // conjugated equation must fit strictly worse.
        let zj = dec.z.col(0);
        let im_mass: f64 = zj.iter().map(|c| c.im.abs()).sum();
        if im_mass > 1e-6 {
            let n = g.n();
            let mut plain = vec![Complex64::new(0.0, 0.0); n];
            let mut conj = vec![Complex64::new(0.0, 0.0); n];
            for i in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += eval_entry(&g, i, k) * zj[k];
                }
                plain[i] = s - dec.lambdas[0] * zj[i].conj();
                conj[i] = s - dec.lambdas[0] * zj[i];
            }
            assert!(scaled_norm(&conj) > 100.0 * scaled_norm(&plain));
        }
    }

    #[test]
    fn boundary_truncation_logic() {
        let mk = |lams: &[f64]| ConEigDecomposition {
            lambdas: lams.to_vec(),
            z: Matrix::zeros(4, lams.len()),
            relgaps: vec![1.0; lams.len()],
            clustered: vec![false; lams.len()],
            residuals: None,
        };
        // Boundary pair resolved: keep values above delta plus one.
        let mut dec = mk(&[1.0, 1e-2, 1e-9, 1e-11]);
        truncate_to_boundary(&mut dec, 1e-8, true).unwrap();
        assert_eq!(dec.lambdas, vec![1.0, 1e-2, 1e-9]);
        assert_eq!(dec.z.cols(), 3);
        // All values above delta but the factorization was cut: the pair
        // below delta was never resolved.
        let mut dec = mk(&[1.0, 1e-2]);
        match truncate_to_boundary(&mut dec, 1e-8, true) {
            Err(Error::DeltaTooSmall { .. }) => {}
            other => panic!("expected DeltaTooSmall, got {other:?}"),
        }
        // Full factorization with all values above delta is legitimate.
        let mut dec = mk(&[1.0, 1e-2]);
        truncate_to_boundary(&mut dec, 1e-8, false).unwrap();
        assert_eq!(dec.len(), 2);
    }

    #[test]
    fn truncated_pipeline_keeps_boundary_pair() {
        // Clustered poles give fast spectral decay; a mid-range delta
        // truncates and the last kept value sits at or below delta.
        let terms: Vec<_> = (-10..=2)
            .map(|m| {
                (
                    ExponentPole::new((0.4 * m as f64).exp(), 0.0).unwrap(),
                    Complex64::new(1.0, 0.0),
                )
            })
            .collect();
        let f = RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms,
        };
        let g = generators_from_rational(&f).unwrap();
        let delta = 1e-7;
        let dec = con_eigvector(&g, delta).unwrap();
        let last = *dec.lambdas.last().unwrap();
        assert!(last <= delta, "boundary value {last:e} above delta");
        for &l in &dec.lambdas[..dec.len() - 1] {
            assert!(l > delta);
        }
    }

    fn random_function(n: usize, seed: u64) -> RationalFunction {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let terms: Vec<_> = (0..n)
            .map(|_| {
                let rho = next().max(1e-6).min(1.0 - 1e-12);
                let phi = next();
                let zeta = (10.0 * next()).max(1e-6);
                let psi = next();
                (
                    ExponentPole::new(-rho.ln(), -TAU * phi).unwrap(),
                    zeta * Complex64::new((TAU * psi).cos(), (TAU * psi).sin()),
                )
            })
            .collect();
        RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms,
        }
    }
}
