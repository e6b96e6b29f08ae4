//! Rational functions on the unit circle and the Cauchy-matrix generators
//! derived from them.
//!
//! A function is held as
//!
//!   f(z) = sum_i alpha_i/(z - gamma_i)
//!        + sum_i conj(alpha_i) z/(1 - conj(gamma_i) z) + alpha0,
//!
//! real-valued on |z| = 1 whenever alpha0 is real. The associated Cauchy
//! matrix C_ij = sqrt(alpha_i) conj(sqrt(alpha_j)) / (1 - gamma_i conj(gamma_j))
//! is Hermitian positive definite for the inputs this crate targets; its
//! con-eigenvalues drive the reduction pipeline.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{
    circle_point_minus_gamma, exponents_coincide, one_minus_conj_gamma_circle,
    one_minus_gamma_product, ExponentPole,
};

/// A rational function with poles strictly inside the unit disk, stored in
/// exponent form, plus the conjugate-reflected part and a constant.
///
/// Zero terms is allowed as the degenerate constant function (reduction can
/// produce it); most pipeline entry points require at least one term and
/// check through [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub alpha0: Complex64,
    pub terms: Vec<(ExponentPole, Complex64)>,
}

impl RationalFunction {
    pub fn n(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates f at the unit-circle point exp(i*theta) through the
    /// exponent-form kernels, so points arbitrarily close to a pole's
    /// angle remain accurate.
    pub fn eval_circle(&self, theta: f64) -> Complex64 {
        let z = Complex64::new(theta.cos(), theta.sin());
        let mut acc = self.alpha0;
        for &(pole, alpha) in &self.terms {
            acc += alpha / circle_point_minus_gamma(theta, pole);
            acc += alpha.conj() * z / one_minus_conj_gamma_circle(theta, pole);
        }
        acc
    }
}

/// Validation report for a rational function.
///
/// Duplicate poles are detected by a sorted neighbor scan, which reports
/// clusters through adjacent representatives; interleavings that evade it
/// are still caught by the factorization kernels, which check every pole
/// pair they touch.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub duplicate_pairs: Vec<(usize, usize)>,
    pub zero_residues: Vec<usize>,
    pub empty: bool,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.duplicate_pairs.is_empty() && self.zero_residues.is_empty() && !self.empty
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if self.empty {
            parts.push("no terms".to_string());
        }
        if !self.duplicate_pairs.is_empty() {
            parts.push(format!("duplicate pole pairs {:?}", self.duplicate_pairs));
        }
        if !self.zero_residues.is_empty() {
            parts.push(format!("zero residues at {:?}", self.zero_residues));
        }
        if parts.is_empty() {
            "ok".to_string()
        } else {
            parts.join("; ")
        }
    }
}

/// Reports duplicate poles and zero residues. Exponent-form constraints
/// (re_tau > 0, im_tau normalized) are enforced by `ExponentPole` itself,
/// so they cannot be violated here.
pub fn validate(f: &RationalFunction) -> Diagnostics {
    let n = f.n();
    let mut diag = Diagnostics {
        empty: n == 0,
        ..Default::default()
    };
    for (i, &(_, alpha)) in f.terms.iter().enumerate() {
        if alpha == Complex64::new(0.0, 0.0) {
            diag.zero_residues.push(i);
        }
    }
    // Sort by (im_tau, re_tau); duplicates appear as adjacent entries.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let a = f.terms[i].0;
        let b = f.terms[j].0;
        (a.im_tau(), a.re_tau())
            .partial_cmp(&(b.im_tau(), b.re_tau()))
            .unwrap()
    });
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        if exponents_coincide(f.terms[i].0, f.terms[j].0) {
            diag.duplicate_pairs.push((i.min(j), i.max(j)));
        }
    }
    // Angles 0 and 2*pi - epsilon are neighbors too.
    if n >= 2 {
        let (i, j) = (order[0], order[n - 1]);
        if exponents_coincide(f.terms[i].0, f.terms[j].0) {
            diag.duplicate_pairs.push((i.min(j), i.max(j)));
        }
    }
    diag
}

/// Generators of the Cauchy matrix C_ij = a_i b_j / (x_i + y_j).
///
/// When built from a rational function, the exponent provenance is retained
/// and every difference or sum the factorizations need is routed through the
/// accurate kernels. Raw generators (no provenance) are supported with
/// documented reduced accuracy for clustered data.
#[derive(Debug, Clone)]
pub struct CauchyGenerators {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    x: Vec<Complex64>,
    y: Vec<Complex64>,
    exponents: Option<Vec<ExponentPole>>,
}

impl CauchyGenerators {
    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn y(&self) -> &[Complex64] {
        &self.y
    }

    pub fn exponents(&self) -> Option<&[ExponentPole]> {
        self.exponents.as_deref()
    }

    /// Raw generators without exponent provenance; differences are then
    /// computed directly, which is only accurate for well-separated data.
    pub fn from_raw_parts(
        a: Vec<Complex64>,
        b: Vec<Complex64>,
        x: Vec<Complex64>,
        y: Vec<Complex64>,
    ) -> Result<Self> {
        let n = a.len();
        if n == 0 || b.len() != n || x.len() != n || y.len() != n {
            return Err(Error::InvalidParameter(
                "generator vectors must be nonempty and equally sized".into(),
            ));
        }
        Ok(Self {
            a,
            b,
            x,
            y,
            exponents: None,
        })
    }

    /// Reorders the generators by `perm` (entry k of the result is entry
    /// perm[k] of self).
    pub(crate) fn permuted(&self, perm: &[usize]) -> Self {
        let pick = |v: &[Complex64]| perm.iter().map(|&i| v[i]).collect();
        Self {
            a: pick(&self.a),
            b: pick(&self.b),
            x: pick(&self.x),
            y: pick(&self.y),
            exponents: self
                .exponents
                .as_ref()
                .map(|e| perm.iter().map(|&i| e[i]).collect()),
        }
    }
}

/// Builds generators from a rational function: with s_i the principal
/// square root of alpha_i,
///
///   a_i = s_i/gamma_i, b_i = conj(s_i), x_i = 1/gamma_i, y_i = -conj(gamma_i),
///
/// so that C_ij = s_i conj(s_j)/(1 - gamma_i conj(gamma_j)). b_i is the
/// conjugate of the stored s_i (never an independent square root), so the
/// Hermitian structure holds exactly.
pub fn generators_from_rational(f: &RationalFunction) -> Result<CauchyGenerators> {
    let n = f.n();
    if n == 0 {
        return Err(Error::InvalidFunction("no terms".into()));
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let mut exps = Vec::with_capacity(n);
    for (index, &(pole, alpha)) in f.terms.iter().enumerate() {
        if alpha == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroResidue { index });
        }
        let s = alpha.sqrt();
        let xi = pole.x();
        a.push(s * xi);
        b.push(s.conj());
        x.push(xi);
        y.push(pole.y());
        exps.push(pole);
    }
    Ok(CauchyGenerators {
        a,
        b,
        x,
        y,
        exponents: Some(exps),
    })
}

/// Reference evaluation of C_ij, routed through the exponent kernels when
/// provenance exists.
pub fn eval_entry(g: &CauchyGenerators, i: usize, j: usize) -> Complex64 {
    match &g.exponents {
        Some(exps) => {
            // s_i conj(s_j) / (1 - gamma_i conj(gamma_j)), s_i = conj(b_i).
            g.b[i].conj() * g.b[j] / one_minus_gamma_product(exps[i], exps[j])
        }
        None => g.a[i] * g.b[j] / (g.x[i] + g.y[j]),
    }
}

/// The (real, positive) diagonal entry C_ii.
pub(crate) fn diag_entry(g: &CauchyGenerators, i: usize) -> Result<f64> {
    match &g.exponents {
        Some(exps) => Ok(g.b[i].norm_sqr() / exps[i].one_minus_abs_gamma_sq()),
        None => {
            let v = g.a[i] * g.b[i] / (g.x[i] + g.y[i]);
            if v.im.abs() > 1e-8 * v.norm() {
                return Err(Error::NotPositive {
                    step: i,
                    value: v.norm(),
                });
            }
            Ok(v.re)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn single_term(alpha: Complex64, re_tau: f64, im_tau: f64) -> RationalFunction {
        RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms: vec![(ExponentPole::new(re_tau, im_tau).unwrap(), alpha)],
        }
    }

    #[test]
    fn single_term_diagonal() {
        // alpha = 1, gamma = 1/2: C_11 = 1/(1 - 1/4) = 4/3.
        let f = single_term(Complex64::new(1.0, 0.0), LN_2, 0.0);
        let g = generators_from_rational(&f).unwrap();
        let c11 = eval_entry(&g, 0, 0);
        assert!((c11.re - 4.0 / 3.0).abs() <= 4.0 * f64::EPSILON * (4.0 / 3.0));
        assert!(c11.im.abs() <= 4.0 * f64::EPSILON);
        assert!((diag_entry(&g, 0).unwrap() - 4.0 / 3.0).abs() <= 4.0 * f64::EPSILON * (4.0 / 3.0));
    }

    #[test]
    fn imaginary_residue_diagonal_real_positive() {
        // alpha = i, tau = 1: C_11 = |alpha|/(1 - e^{-2}) = 1/(1 - e^{-2}).
        let f = single_term(Complex64::new(0.0, 1.0), 1.0, 0.0);
        let g = generators_from_rational(&f).unwrap();
        let want = 1.0 / (1.0 - (-2.0f64).exp());
        let c11 = eval_entry(&g, 0, 0);
        assert!((c11.re - want).abs() <= 4.0 * f64::EPSILON * want);
        assert!(c11.im.abs() <= 4.0 * f64::EPSILON * want);
    }

    #[test]
    fn hermitian_entrywise() {
        // Deterministic pseudo-random 8x8 instance.
        let mut terms = Vec::new();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..8 {
            let rho = 0.05 + 0.9 * next();
            let phi = next();
            let zeta = 10.0 * next().max(1e-3);
            let psi = next();
            let pole = ExponentPole::new(-rho.ln(), -std::f64::consts::TAU * phi).unwrap();
            let alpha = zeta
                * Complex64::new(
                    (std::f64::consts::TAU * psi).cos(),
                    (std::f64::consts::TAU * psi).sin(),
                );
            terms.push((pole, alpha));
        }
        let f = RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms,
        };
        let g = generators_from_rational(&f).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let cij = eval_entry(&g, i, j);
                let cji = eval_entry(&g, j, i);
                let d = (cij - cji.conj()).norm();
                assert!(
                    d <= 4.0 * f64::EPSILON * cij.norm(),
                    "Hermitian violation at ({i},{j}): {d:e}"
                );
            }
        }
        // Raw-path evaluation agrees for separated data.
        let raw = CauchyGenerators::from_raw_parts(
            g.a().to_vec(),
            g.b().to_vec(),
            g.x().to_vec(),
            g.y().to_vec(),
        )
        .unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let d = (eval_entry(&g, i, j) - eval_entry(&raw, i, j)).norm();
                assert!(d <= 1e-12 * eval_entry(&g, i, j).norm());
            }
        }
    }

    #[test]
    fn validate_flags() {
        let p = ExponentPole::new(1.0, 0.5).unwrap();
        let q = ExponentPole::new(2.0, 1.5).unwrap();
        let f = RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms: vec![
                (p, Complex64::new(1.0, 0.0)),
                (q, Complex64::new(0.0, 0.0)),
                (p, Complex64::new(2.0, 0.0)),
            ],
        };
        let d = validate(&f);
        assert_eq!(d.duplicate_pairs, vec![(0, 2)]);
        assert_eq!(d.zero_residues, vec![1]);
        assert!(!d.is_valid());

        let ok = RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms: vec![
                (p, Complex64::new(1.0, 0.0)),
                (q, Complex64::new(2.0, 0.0)),
            ],
        };
        assert!(validate(&ok).is_valid());
        assert!(validate(&RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms: vec![]
        })
        .empty);
    }

    #[test]
    fn zero_residue_rejected_by_generators() {
        let f = RationalFunction {
            alpha0: Complex64::new(0.0, 0.0),
            terms: vec![(
                ExponentPole::new(1.0, 0.0).unwrap(),
                Complex64::new(0.0, 0.0),
            )],
        };
        assert!(matches!(
            generators_from_rational(&f),
            Err(Error::ZeroResidue { index: 0 })
        ));
    }

    #[test]
    fn eval_circle_is_real_for_real_alpha0() {
        let f = single_term(Complex64::new(0.3, -0.7), 0.2, 1.1);
        for k in 0..64 {
            let theta = std::f64::consts::TAU * (k as f64) / 64.0;
            let v = f.eval_circle(theta);
            assert!(
                v.im.abs() <= 1e-12 * v.norm().max(1.0),
                "imaginary leakage {:e}",
                v.im
            );
        }
    }
}
