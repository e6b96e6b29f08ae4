//! Pivoted partial Cholesky factorization of positive-definite Cauchy
//! matrices, entirely through the quotient kernels: no entry of the matrix
//! is ever formed by subtractive cancellation.
//!
//! The factorization is C ~= X D^2 X^* with X = P L, L unit lower
//! trapezoidal (n x m) and D positive diagonal. Pivots are chosen by a
//! greedy complete-pivoting rule on the diagonal of the running Schur
//! complement, maintained multiplicatively:
//!
//!   g_i <- g_i * (x_i - x_k)(y_i - y_k) / ((x_i + y_k)(y_i + x_k)),
//!
//! with every factor evaluated by the cancellation-free kernels when the
//! generators carry exponent provenance. The loop stops once the largest
//! remaining diagonal drops below eta = eps * delta^2, which keeps every
//! con-eigenvalue above delta fully resolved.

use num_complex::Complex64;

use crate::cauchy::{diag_entry, CauchyGenerators};
use crate::error::{Error, Result};
use crate::kernels::{
    one_minus_gamma_product, ratio_x_diff_over_x_plus_y, ratio_y_diff_over_y_plus_x, ExponentPole,
};
use crate::matrix::Matrix;

/// Relative tolerance on the imaginary part of a quantity that must be
/// real for a Hermitian positive-definite input (raw-generator path only;
/// the provenance path produces exactly real pivots by construction).
const IMAG_TOL: f64 = 1e-8;

/// Result of the pivoted partial factorization. Row i of `l` corresponds
/// to row `perm[i]` of the original matrix.
#[derive(Debug, Clone)]
pub struct PartialCholesky {
    perm: Vec<usize>,
    l: Matrix,
    d: Vec<f64>,
    exhausted: bool,
}

impl PartialCholesky {
    /// Number of factored columns (the truncation rank).
    pub fn m(&self) -> usize {
        self.d.len()
    }

    /// True when the factorization resolved everything double precision
    /// can represent: it ran to full rank, or stopped only because the
    /// remaining Schur diagonal was exactly zero. False only for a cutoff
    /// stop at a nonzero remaining diagonal.
    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn n(&self) -> usize {
        self.l.rows()
    }

    /// perm[k] = original index of the k-th pivot (first m entries) and of
    /// the remaining rows in their final scan order.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Unit lower trapezoidal factor in pivot order.
    pub fn l(&self) -> &Matrix {
        &self.l
    }

    /// Positive diagonal scales; d[k]^2 is the k-th pivot.
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// The factor X with rows scattered back to original order, so that
    /// C ~= X diag(d^2) X^*.
    pub fn scattered_factor(&self) -> Matrix {
        let (n, m) = (self.l.rows(), self.l.cols());
        let mut x = Matrix::zeros(n, m);
        for k in 0..m {
            for i in 0..n {
                x[(self.perm[i], k)] = self.l[(i, k)];
            }
        }
        x
    }

    /// Solves C beta = rhs using a full factorization (m = n).
    pub fn solve_pd(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n();
        if self.m() != n {
            return Err(Error::InvalidParameter(
                "solve_pd requires a full (untruncated) factorization".into(),
            ));
        }
        if rhs.len() != n {
            return Err(Error::InvalidParameter("rhs length mismatch".into()));
        }
        // C = P L D^2 L^* P^T.
        let mut v: Vec<Complex64> = (0..n).map(|i| rhs[self.perm[i]]).collect();
        for k in 0..n {
            let vk = v[k];
            for i in k + 1..n {
                v[i] -= self.l[(i, k)] * vk;
            }
        }
        for (k, vk) in v.iter_mut().enumerate() {
            *vk /= self.d[k] * self.d[k];
        }
        let mut u = v;
        for k in (0..n).rev() {
            let mut s = u[k];
            for i in k + 1..n {
                s -= self.l[(i, k)].conj() * u[i];
            }
            u[k] = s;
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            out[self.perm[i]] = u[i];
        }
        Ok(out)
    }
}

/// Kernel router: provenance path uses the exponent kernels, raw path the
/// direct generator arithmetic.
struct Ctx<'a> {
    g: &'a CauchyGenerators,
    exps: Option<&'a [ExponentPole]>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a CauchyGenerators) -> Self {
        Self {
            g,
            exps: g.exponents(),
        }
    }

    /// (x_i - x_k) / (x_i + y_k)
    fn ratio_x(&self, i: usize, k: usize) -> Result<Complex64> {
        match self.exps {
            Some(e) => ratio_x_diff_over_x_plus_y(e[i], e[k]),
            None => {
                let num = self.g.x()[i] - self.g.x()[k];
                let den = self.g.x()[i] + self.g.y()[k];
                Ok(num / den)
            }
        }
    }

    /// (y_i - y_k) / (y_i + x_k)
    fn ratio_y(&self, i: usize, k: usize) -> Result<Complex64> {
        match self.exps {
            Some(e) => ratio_y_diff_over_y_plus_x(e[i], e[k]),
            None => {
                let num = self.g.y()[i] - self.g.y()[k];
                let den = self.g.y()[i] + self.g.x()[k];
                Ok(num / den)
            }
        }
    }

    /// Multiplicative diagonal update after pivot k. On the provenance path
    /// this is exp(-2 re_k) |ratio_x|^2, exactly real and nonnegative.
    fn pivot_update_factor(&self, i: usize, k: usize) -> Result<Complex64> {
        match self.exps {
            Some(e) => {
                let rx = ratio_x_diff_over_x_plus_y(e[i], e[k])?;
                let f = (-2.0 * e[k].re_tau()).exp() * rx.norm_sqr();
                Ok(Complex64::new(f, 0.0))
            }
            None => Ok(self.ratio_x(i, k)? * self.ratio_y(i, k)?),
        }
    }

    /// Denominator of the reduced column entry G(i,k): 1 - gamma_i
    /// conj(gamma_k) with provenance, x_i + y_k without.
    fn denom(&self, i: usize, k: usize) -> Complex64 {
        match self.exps {
            Some(e) => one_minus_gamma_product(e[i], e[k]),
            None => self.g.x()[i] + self.g.y()[k],
        }
    }

    /// Initial reduced row scale: s_i with provenance (the x_i factor is
    /// absorbed into the denominator rewrite), a_i without.
    fn alpha_init(&self, i: usize) -> Complex64 {
        match self.exps {
            Some(_) => self.g.b()[i].conj(),
            None => self.g.a()[i],
        }
    }
}

fn check_pivot(v: Complex64, step: usize) -> Result<f64> {
    if v.im.abs() > IMAG_TOL * v.norm() {
        return Err(Error::NotPositive {
            step,
            value: v.re,
        });
    }
    if !(v.re > 0.0) {
        return Err(Error::NotPositive {
            step,
            value: v.re,
        });
    }
    Ok(v.re)
}

/// Core pivot scan with an explicit cutoff eta on the largest remaining
/// diagonal. Selects at least one pivot. The flag reports exhaustion:
/// full rank reached, or the remaining diagonal hit exactly zero (the
/// numerical rank, everything representable already factored).
fn pivot_scan(g: &CauchyGenerators, eta: f64) -> Result<(Vec<usize>, usize, bool)> {
    let n = g.n();
    let ctx = Ctx::new(g);
    let mut gd: Vec<Complex64> = Vec::with_capacity(n);
    for i in 0..n {
        gd.push(Complex64::new(diag_entry(g, i)?, 0.0));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut m = 0;
    let mut exhausted = true;
    for k in 0..n {
        let mut jbest = k;
        let mut best = -1.0;
        for (j, &pj) in perm.iter().enumerate().skip(k) {
            let a = gd[pj].norm();
            if a > best {
                best = a;
                jbest = j;
            }
        }
        perm.swap(k, jbest);
        let p = perm[k];
        check_pivot(gd[p], k)?;
        m = k + 1;
        if k + 1 == n {
            break;
        }
        let mut next_max = 0.0f64;
        for &i in perm.iter().skip(k + 1) {
            gd[i] *= ctx.pivot_update_factor(i, p)?;
            next_max = next_max.max(gd[i].norm());
        }
        // <= so an exactly-zero remaining diagonal truncates cleanly even
        // when eta itself underflowed to zero (delta below ~1e-146): a zero
        // Schur diagonal is the numerical rank, not an indefinite input.
        if next_max <= eta {
            exhausted = next_max == 0.0;
            break;
        }
    }
    Ok((perm, m, exhausted))
}

/// Greedy complete-pivoting order for the factorization, truncated at
/// eta = eps * delta^2. Returns the generators in pivot order, the
/// permutation, the truncation rank m (at least 1: the dominant pivot
/// is always selected, so an oversized delta reports rank 1 rather than
/// an empty factorization), and the exhaustion flag described on
/// `PartialCholesky::exhausted`.
pub fn pivot_order(
    g: &CauchyGenerators,
    delta: f64,
) -> Result<(CauchyGenerators, Vec<usize>, usize, bool)> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive and finite, got {delta}"
        )));
    }
    let eta = f64::EPSILON * delta * delta;
    let (perm, m, exhausted) = pivot_scan(g, eta)?;
    Ok((g.permuted(&perm), perm, m, exhausted))
}

fn factorize_ordered(
    gp: &CauchyGenerators,
    perm: Vec<usize>,
    m: usize,
    exhausted: bool,
) -> Result<PartialCholesky> {
    let n = gp.n();
    let ctx = Ctx::new(gp);
    let mut alpha: Vec<Complex64> = (0..n).map(|i| ctx.alpha_init(i)).collect();
    let mut beta: Vec<Complex64> = gp.b().to_vec();
    let mut l = Matrix::zeros(n, m);
    let mut d = vec![0.0; m];
    for k in 0..m {
        if k > 0 {
            for i in k..n {
                alpha[i] *= ctx.ratio_x(i, k - 1)?;
                beta[i] *= ctx.ratio_y(i, k - 1)?;
            }
        }
        let bk = beta[k];
        let pivot = check_pivot(alpha[k] * bk / ctx.denom(k, k), k)?;
        d[k] = pivot.sqrt();
        l[(k, k)] = Complex64::new(1.0, 0.0);
        for i in k + 1..n {
            l[(i, k)] = alpha[i] * bk / ctx.denom(i, k) / pivot;
        }
    }
    Ok(PartialCholesky {
        perm,
        l,
        d,
        exhausted,
    })
}

/// Pivoted partial Cholesky factorization, truncated once the remaining
/// Schur diagonal falls below eps * delta^2.
pub fn partial_cholesky(g: &CauchyGenerators, delta: f64) -> Result<PartialCholesky> {
    let (gp, perm, m, exhausted) = pivot_order(g, delta)?;
    factorize_ordered(&gp, perm, m, exhausted)
}

/// Full-depth pivoted factorization (no cutoff). Stops early only at the
/// numerical rank, when the remaining Schur diagonal underflows to exact
/// zero; fails with `NotPositive` if the matrix is numerically indefinite.
pub fn cholesky_full(g: &CauchyGenerators) -> Result<PartialCholesky> {
    let (perm, m, exhausted) = pivot_scan(g, 0.0)?;
    let gp = g.permuted(&perm);
    factorize_ordered(&gp, perm, m, exhausted)
}
