//! Reduction of a rational function to near-optimal pole count.
//!
//! Given f with n poles inside the unit disk and a target accuracy delta,
//! the pipeline picks the first con-eigenvalue lambda_m <= delta of the
//! associated Cauchy matrix (m counted from zero) and builds the auxiliary
//! function
//!
//!   v(z) = sum_i conj(sqrt(alpha_i)) u_i / (1 - conj(gamma_i) z),
//!
//! whose values at the nodes are v(gamma_i) = conj(u_i) / sqrt(alpha_i).
//! v is rational with numerator degree n - 1 and poles fixed at the mirror
//! points 1/conj(gamma_j), so those n node values determine it exactly. The
//! module represents it through its Blaschke quotient
//!
//!   q(z) = v(z) * prod_j (1 - conj(gamma_j) z) / (z - gamma_j)
//!        = sum_i c_i / (z - gamma_i),
//!
//! a bare partial fraction over the nodes whose zeros away from the nodes
//! are exactly the zeros of v. The con-eigenvalue selection puts exactly m
//! of those zeros inside the open unit disk; Newton iteration in exponent
//! coordinates finds them, and the reduced function's poles land there.
//! Residues then come from an m x m positive-definite Cauchy system. The
//! sup-norm error of the result on the unit circle is close to lambda_m.

use num_complex::Complex64;

use crate::cauchy::{generators_from_rational, validate, RationalFunction};
use crate::cholesky::cholesky_full;
use crate::coneig::{con_eigvector, ConEigDecomposition};
use crate::error::{Error, Result};
use crate::kernels::{
    exp_point_minus_gamma, exponents_coincide, gamma_diff, one_minus_conj_gamma_exp,
    one_minus_gamma_product, reduce_mod_2pi, ExponentPole,
};

/// Newton iteration budget per seed.
const NEWTON_MAX_ITERS: u32 = 80;
/// Relative step size at which the iteration is declared converged.
const NEWTON_STEP_TOL: f64 = 1e-13;
/// Extra Newton steps taken after convergence. Near clustered nodes the
/// attainable accuracy sits far below the step tolerance (the quotient's
/// curvature grows like one over the local node spacing), and each extra
/// step squares the remaining error down toward that floor.
const NEWTON_POLISH: u32 = 3;
/// Plateau acceptance: when this many consecutive steps fail to halve the
/// best step seen, and that best step is already small, the iterate is
/// bouncing inside its floating-point noise ball and further steps carry
/// no information. This path matters when the root depth, and with it the
/// natural step scale, sits many orders below |eta|.
const NEWTON_STALL_LIMIT: u32 = 8;
const NEWTON_PLATEAU_TOL: f64 = 1e-8;
/// Residual gate on accepted roots: |q| relative to the sum of the
/// partial-fraction term magnitudes at the same point. The gate demands
/// genuine cancellation across the terms, which is what being a zero
/// means numerically; a fixed absolute threshold would be meaningless at
/// deep-cluster scales.
const ROOT_RESIDUAL_TOL: f64 = 1e-8;
/// Root dedup gate: two finds are one root when their exponent distance
/// is under DEPTH_TOL times the shallower depth (real part) plus ABS_TOL
/// times the exponent magnitude. Distinct clustered roots differ by a
/// fraction of their depth, which can sit ten orders below |tau|, while
/// repeated finds of one root agree to the attainable accuracy, a tiny
/// fraction of the local node spacing; a gate relative to |tau| alone
/// would merge a whole cluster into one root.
const ROOT_DEDUP_DEPTH_TOL: f64 = 1e-3;
const ROOT_DEDUP_ABS_TOL: f64 = 1e-14;
/// Perturbed-restart rounds when the plain seeds miss roots.
const RESTART_ROUNDS: usize = 3;
/// Default uniform grid size for sup-error measurement.
const DEFAULT_GRID_BASE: usize = 512;

/// Rational interpolant through given values at the pole locations
/// gamma_i = exp(-tau_i), with its own poles prescribed at the mirror
/// points 1/conj(gamma_j). Stored as the partial-fraction coefficients of
/// the Blaschke quotient
///
///   q(z) = sum_i c_i / (z - gamma_i),
///   c_i  = v_i * prod_j (1 - gamma_i conj(gamma_j))
///              / prod_{j != i} (gamma_i - gamma_j),
///
/// which reproduces the interpolant as
///
///   v(z) = q(z) * prod_j (z - gamma_j) / (1 - conj(gamma_j) z).
///
/// The numerator polynomial of v has degree n - 1 and is pinned by the n
/// node values, so the representation is exact by construction; no
/// recursion and no node ordering enter. Zeros of q away from the nodes
/// are exactly the zeros of v (the Blaschke factors vanish only at the
/// nodes), which is what the unit-disk root search consumes.
///
/// The coefficients are accumulated in log magnitude and phase through the
/// exponent-form kernels and stored scaled by exp(-log_scale): the two
/// products nearly cancel order for order on clustered nodes, but each
/// alone can leave the double exponent range long before that, and a
/// common positive factor moves no zero.
#[derive(Debug, Clone)]
pub struct RationalInterpolant {
    nodes: Vec<ExponentPole>,
    coeffs: Vec<Complex64>,
    log_scale: f64,
}

impl RationalInterpolant {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in input order.
    pub fn nodes(&self) -> &[ExponentPole] {
        &self.nodes
    }

    /// Partial-fraction coefficients of the quotient, scaled by
    /// exp(-log_scale) so the largest has unit magnitude. An exactly zero
    /// input value yields an exactly zero coefficient.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Natural log of the common positive factor taken out of the stored
    /// coefficients. On deeply clustered instances it can exceed the
    /// double exponent range, which is why it is never exponentiated on
    /// its own.
    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// The Blaschke quotient q at z = exp(-eta): the scaled partial
    /// fraction whose zeros away from the nodes are the zeros of the
    /// interpolant. Singular at the nodes themselves.
    pub fn quotient(&self, eta: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&node, &c) in self.nodes.iter().zip(&self.coeffs) {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            acc += c / exp_point_minus_gamma(eta, node);
        }
        acc
    }

    /// Quotient value and its derivative with respect to eta. With
    /// z = exp(-eta) and dz/deta = -z,
    ///
    ///   dq/deta = z * sum_i c_i / (z - gamma_i)^2.
    pub fn quotient_with_derivative(&self, eta: Complex64) -> (Complex64, Complex64) {
        let z = (-eta).exp();
        let mut q = Complex64::new(0.0, 0.0);
        let mut s = Complex64::new(0.0, 0.0);
        for (&node, &c) in self.nodes.iter().zip(&self.coeffs) {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let d = exp_point_minus_gamma(eta, node);
            let t = c / d;
            q += t;
            s += t / d;
        }
        (q, z * s)
    }

    /// Newton data for the numerator polynomial p(z) = q(z) prod_j (z -
    /// gamma_j): the quotient q at z = exp(-eta) together with the Newton
    /// step of p in exponent coordinates,
    ///
    ///   step = P/P' for P(eta) = p(exp(-eta))
    ///        = q / (z (sum_i c_i/(z - gamma_i)^2 - q sum_j 1/(z - gamma_j))).
    ///
    /// The root search iterates on p rather than on q: both vanish at the
    /// interpolant's zeros, but q also decays to zero at z = infinity
    /// (numerator degree n - 1 against n poles), which would trap any
    /// iterate that wanders outside the zero set in an endless drift of
    /// unit steps toward re(eta) = -infinity. p is a polynomial and has
    /// nothing there. The log-derivative sum runs over all nodes, zero
    /// coefficients included: those nodes still carry factors of p.
    pub fn numerator_step(&self, eta: Complex64) -> (Complex64, Complex64) {
        let z = (-eta).exp();
        let mut q = Complex64::new(0.0, 0.0);
        let mut s2 = Complex64::new(0.0, 0.0);
        let mut l = Complex64::new(0.0, 0.0);
        for (&node, &c) in self.nodes.iter().zip(&self.coeffs) {
            let d = exp_point_minus_gamma(eta, node);
            let inv = Complex64::new(1.0, 0.0) / d;
            l += inv;
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let t = c * inv;
            q += t;
            s2 += t * inv;
        }
        (q, q / (z * (s2 - q * l)))
    }

    /// Quotient value together with the term-magnitude sum at the same
    /// point, the natural residual scale: |q| far below the sum certifies
    /// cancellation across the terms, i.e. a zero.
    pub fn quotient_and_scale(&self, eta: Complex64) -> (Complex64, f64) {
        let mut q = Complex64::new(0.0, 0.0);
        let mut a = 0.0f64;
        for (&node, &c) in self.nodes.iter().zip(&self.coeffs) {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let t = c / exp_point_minus_gamma(eta, node);
            q += t;
            a += t.norm();
        }
        (q, a)
    }

    /// The interpolated function v at z = exp(-eta), reconstructed from
    /// the quotient and the Blaschke factors in log space (the common
    /// scale can exceed the double exponent range, so the factors are
    /// never multiplied out directly). The reconstruction degenerates to
    /// 0 * inf exactly at the nodes; evaluate anywhere else.
    pub fn value_at_exponent(&self, eta: Complex64) -> Complex64 {
        let q = self.quotient(eta);
        if q == Complex64::new(0.0, 0.0) {
            return q;
        }
        let mut lm = self.log_scale + q.norm().ln();
        let mut ph = q.arg();
        for &node in &self.nodes {
            let num = exp_point_minus_gamma(eta, node);
            let den = one_minus_conj_gamma_exp(eta, node);
            lm += num.norm().ln() - den.norm().ln();
            ph += num.arg() - den.arg();
        }
        Complex64::from_polar(lm.exp(), ph)
    }

    /// Newton start adjacent to node i: the zero of the one-pole model
    /// c_i/(z - gamma_i) + R_i, with R_i the remaining terms frozen at the
    /// node, i.e. z0 = gamma_i - c_i/R_i, mapped to exponent coordinates.
    /// The quotient is singular at the node itself, so the search cannot
    /// start exactly there; the model zero is the nearest informative
    /// point, and for interlaced zero patterns it lands inside the Newton
    /// basin of the adjacent zero.
    fn local_start(&self, i: usize) -> Option<Complex64> {
        let ci = self.coeffs[i];
        if ci == Complex64::new(0.0, 0.0) {
            return None;
        }
        let mut r = Complex64::new(0.0, 0.0);
        for (j, (&node, &c)) in self.nodes.iter().zip(&self.coeffs).enumerate() {
            if j == i || c == Complex64::new(0.0, 0.0) {
                continue;
            }
            r += c / gamma_diff(self.nodes[i], node);
        }
        if !r.is_finite() || r == Complex64::new(0.0, 0.0) {
            return None;
        }
        // z0 = gamma_i (1 - w) with w = c_i / (R_i gamma_i), so
        // eta0 = tau_i - ln(1 - w); the series keeps small jumps exact.
        let w = ci / (r * self.nodes[i].gamma());
        if !w.is_finite() {
            return None;
        }
        let eta0 = if w.norm() < 1e-4 {
            self.nodes[i].tau() + w + 0.5 * w * w
        } else {
            self.nodes[i].tau() - (Complex64::new(1.0, 0.0) - w).ln()
        };
        if eta0.is_finite() {
            Some(eta0)
        } else {
            None
        }
    }
}

/// Builds the interpolant through the given values at the given nodes.
/// Interpolation is exact by construction; the only failure modes are
/// coincident nodes (the coefficients are undefined) and degenerate value
/// sets. An exactly zero value is legal and drops its node's term from
/// the quotient; note this makes that node itself a zero of v, which the
/// quotient, and hence the root search, does not see.
pub fn build_interpolant(
    nodes: &[ExponentPole],
    values: &[Complex64],
) -> Result<RationalInterpolant> {
    let n = nodes.len();
    if n == 0 || values.len() != n {
        return Err(Error::InvalidParameter(
            "need equally many nodes and values, at least one".into(),
        ));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("values must be finite".into()));
    }
    for i in 0..n {
        for j in i + 1..n {
            if exponents_coincide(nodes[i], nodes[j]) {
                return Err(Error::CoincidentNodes { i, j });
            }
        }
    }
    // c_i = v_i prod_j (1 - gamma_i conj(gamma_j)) / prod_{j!=i} (gamma_i
    // - gamma_j), accumulated as log magnitude plus phase. Every factor
    // goes through the exponent-form kernels, so clustered nodes lose no
    // relative accuracy, and the log form absorbs the huge intermediate
    // dynamic range the raw products would hit.
    let mut lnmag = vec![f64::NEG_INFINITY; n];
    let mut phase = vec![0.0f64; n];
    for i in 0..n {
        let vi = values[i];
        if vi == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut lm = vi.norm().ln();
        let mut ph = vi.arg();
        for j in 0..n {
            let num = one_minus_gamma_product(nodes[i], nodes[j]);
            let nn = num.norm();
            if !(nn > 0.0) {
                return Err(Error::CoincidentNodes { i, j });
            }
            lm += nn.ln();
            ph += num.arg();
            if i != j {
                let den = gamma_diff(nodes[i], nodes[j]);
                let dn = den.norm();
                if !(dn > 0.0) {
                    return Err(Error::CoincidentNodes { i, j });
                }
                lm -= dn.ln();
                ph -= den.arg();
            }
        }
        if !lm.is_finite() {
            return Err(Error::Overflow(format!(
                "interpolant coefficient {i} left the double exponent range"
            )));
        }
        lnmag[i] = lm;
        phase[i] = ph;
    }
    let log_scale = lnmag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if log_scale == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter(
            "at least one value must be nonzero".into(),
        ));
    }
    let coeffs = (0..n)
        .map(|i| {
            if lnmag[i] == f64::NEG_INFINITY {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar((lnmag[i] - log_scale).exp(), phase[i])
            }
        })
        .collect();
    Ok(RationalInterpolant {
        nodes: nodes.to_vec(),
        coeffs,
        log_scale,
    })
}

/// Con-eigenvector entries converted to values of the auxiliary function:
/// v(gamma_i) = conj(u_i) / sqrt(alpha_i) with the principal square root
/// (the same branch the generators use). The conjugate is forced by the
/// defining relation: v(z) = sum_j conj(s_j) u_j / (1 - conj(gamma_j) z)
/// up to scale, so v(gamma_i) = (C u)_i / (lambda s_i) = conj(u_i) / s_i.
/// On real data the conjugate is invisible; on complex data dropping it
/// interpolates a different function with zeros nowhere near the poles of
/// the near-optimal approximant.
pub fn coneig_values_of_v(
    dec: &ConEigDecomposition,
    f: &RationalFunction,
    index: usize,
) -> Result<Vec<Complex64>> {
    if index >= dec.len() {
        return Err(Error::InvalidParameter(format!(
            "con-eigenpair index {index} out of range {}",
            dec.len()
        )));
    }
    if dec.z.rows() != f.n() {
        return Err(Error::InvalidParameter(
            "decomposition size does not match the function".into(),
        ));
    }
    Ok(f.terms
        .iter()
        .zip(dec.z.col(index))
        .map(|(&(_, alpha), &u)| u.conj() / alpha.sqrt())
        .collect())
}

fn exponent_distance(a: Complex64, b: Complex64) -> f64 {
    (a.re - b.re).hypot(reduce_mod_2pi(a.im - b.im))
}

fn normalize_im(mut eta: Complex64) -> Complex64 {
    eta.im = eta.im.rem_euclid(std::f64::consts::TAU);
    if eta.im >= std::f64::consts::TAU {
        eta.im = 0.0;
    }
    eta
}

struct NewtonOutcome {
    eta: Complex64,
    iters: u32,
}

fn newton_from(itp: &RationalInterpolant, seed: Complex64) -> Option<NewtonOutcome> {
    let mut eta = normalize_im(seed);
    let mut iters = 0;
    let mut converged = false;
    let mut polish = 0u32;
    let mut best_step = f64::INFINITY;
    let mut stall = 0u32;
    for it in 1..=NEWTON_MAX_ITERS {
        iters = it;
        let (q, dq) = itp.quotient_with_derivative(eta);
        if !q.is_finite() || !dq.is_finite() {
            return None;
        }
        if q == Complex64::new(0.0, 0.0) {
            // Dead on a zero (the quotient underflows right at a root).
            converged = true;
            break;
        }
        if dq == Complex64::new(0.0, 0.0) {
            return None;
        }
        let step = q / dq;
        let next = eta - step;
        if !next.is_finite() {
            return None;
        }
        eta = normalize_im(next);
        if converged {
            polish += 1;
            if polish >= NEWTON_POLISH {
                break;
            }
            continue;
        }
        let scale = eta.norm().max(1e-300);
        let snorm = step.norm();
        if snorm <= NEWTON_STEP_TOL * scale {
            converged = true;
            continue;
        }
        if snorm < 0.5 * best_step {
            best_step = snorm;
            stall = 0;
        } else {
            stall += 1;
            if stall >= NEWTON_STALL_LIMIT && best_step <= NEWTON_PLATEAU_TOL * scale {
                // Noise-floor plateau: steps stopped shrinking at a size
                // already deep under the seed scale.
                converged = true;
                continue;
            }
        }
    }
    if !converged {
        return None;
    }
    if !(eta.re > 0.0) {
        return None;
    }
    let (q, scale) = itp.quotient_and_scale(eta);
    if !(q.norm() <= ROOT_RESIDUAL_TOL * scale) {
        return None;
    }
    Some(NewtonOutcome { eta, iters })
}

fn merge_root(roots: &mut Vec<(Complex64, u32)>, candidate: NewtonOutcome) {
    for &(r, _) in roots.iter() {
        let depth = r.re.min(candidate.eta.re).max(0.0);
        let scale = r.norm().max(candidate.eta.norm()).max(1e-300);
        let tol = ROOT_DEDUP_DEPTH_TOL * depth + ROOT_DEDUP_ABS_TOL * scale;
        if exponent_distance(r, candidate.eta) <= tol {
            return;
        }
    }
    roots.push((candidate.eta, candidate.iters));
}

/// Finds the zeros of the interpolated function inside the unit disk via
/// Newton iteration on the Blaschke quotient in exponent coordinates.
/// `seed_order` lists node indices, best candidates first (zeros sit where
/// |v| is small); each contributes its local-model start plus perturbed
/// restarts. The zero count is an AAK theorem, so anything other than
/// exactly `expected` distinct in-disk roots after all seeds and restart
/// rounds is a hard error.
pub fn find_unit_disk_roots(
    itp: &RationalInterpolant,
    expected: usize,
    seed_order: &[usize],
) -> Result<(Vec<ExponentPole>, Vec<u32>)> {
    if expected == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if seed_order.iter().any(|&i| i >= itp.len()) {
        return Err(Error::InvalidParameter(
            "seed index out of interpolant range".into(),
        ));
    }
    let starts: Vec<Option<Complex64>> =
        seed_order.iter().map(|&i| itp.local_start(i)).collect();
    let mut roots: Vec<(Complex64, u32)> = Vec::new();
    'rounds: for round in 0..=RESTART_ROUNDS {
        for (j, &i) in seed_order.iter().enumerate() {
            let tau = itp.nodes()[i].tau();
            let start = match (round, starts[j]) {
                (0, Some(s)) => s,
                (0, None) => continue,
                (_, local) => {
                    // Deterministic spiral of restarts, sized by the local
                    // jump when one exists (the scale the adjacent zero
                    // lives on) and by the node exponent otherwise.
                    let (center, unit) = match local {
                        Some(s) => (
                            s,
                            0.5 * exponent_distance(s, tau)
                                .max(1e-3 * itp.nodes()[i].re_tau()),
                        ),
                        None => (tau, 0.05 * tau.norm().max(0.1)),
                    };
                    let angle = std::f64::consts::TAU
                        * (0.618_033_988_749_894_9 * (j + round * seed_order.len()) as f64)
                            .fract();
                    center + Complex64::from_polar(round as f64 * unit, angle)
                }
            };
            if let Some(out) = newton_from(itp, start) {
                merge_root(&mut roots, out);
                if roots.len() > expected {
                    return Err(Error::RootCountMismatch {
                        found: roots.len(),
                        expected,
                    });
                }
                if roots.len() == expected {
                    break 'rounds;
                }
            }
        }
    }
    if roots.len() != expected {
        return Err(Error::RootCountMismatch {
            found: roots.len(),
            expected,
        });
    }
    // Deterministic order regardless of seed scheduling.
    roots.sort_by(|a, b| (a.0.im, a.0.re).partial_cmp(&(b.0.im, b.0.re)).unwrap());
    let mut out = Vec::with_capacity(expected);
    let mut iters = Vec::with_capacity(expected);
    for (eta, it) in roots {
        out.push(ExponentPole::new(eta.re, eta.im)?);
        iters.push(it);
    }
    Ok((out, iters))
}

/// Solves the residue system
///   sum_i beta_i / (1 - eta_i conj(eta_j)) = sum_i alpha_i / (1 - gamma_i conj(eta_j))
/// for j = 1..m. The system matrix is itself a positive-definite Cauchy
/// matrix (unit residues at the new poles), so the structured Cholesky
/// solves it in O(m^2) after factorization.
pub fn solve_residues(roots: &[ExponentPole], f: &RationalFunction) -> Result<Vec<Complex64>> {
    let m = roots.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut rhs = Vec::with_capacity(m);
    for &root in roots {
        let mut s = Complex64::new(0.0, 0.0);
        for &(pole, alpha) in &f.terms {
            s += alpha / one_minus_gamma_product(pole, root);
        }
        rhs.push(s);
    }
    let unit = RationalFunction {
        alpha0: Complex64::new(0.0, 0.0),
        terms: roots
            .iter()
            .map(|&r| (r, Complex64::new(1.0, 0.0)))
            .collect(),
    };
    let gens = generators_from_rational(&unit)?;
    let pc = cholesky_full(&gens)?;
    // The system matrix is the conjugate of the Hermitian PD matrix the
    // factorization handles; conjugating both sides maps one to the other.
    let rhs_conj: Vec<Complex64> = rhs.iter().map(|r| r.conj()).collect();
    let sol = pc.solve_pd(&rhs_conj)?;
    Ok(sol.into_iter().map(|b| b.conj()).collect())
}

/// Union of evaluation abscissas x in [0,1) for the given functions: a
/// uniform base grid plus windows around every pole angle, width
/// proportional to re(tau), at least 32 points each.
pub fn adaptive_grid(functions: &[&RationalFunction], base_points: usize) -> Vec<f64> {
    let base = base_points.max(64);
    let mut xs = Vec::with_capacity(base + functions.iter().map(|f| f.n()).sum::<usize>() * 66);
    for k in 0..base {
        xs.push(k as f64 / base as f64);
    }
    let tau = std::f64::consts::TAU;
    for f in functions {
        for &(pole, _) in &f.terms {
            // The pole angle is -im(tau); its reflected partner sits at
            // +im(tau). Window both.
            for center in [-pole.im_tau() / tau, pole.im_tau() / tau] {
                let w = (4.0 * pole.re_tau() / tau).min(0.25).max(1e-18);
                xs.push(center.rem_euclid(1.0));
                for j in 0..32 {
                    let x = center + w * (2.0 * j as f64 / 31.0 - 1.0);
                    xs.push(x.rem_euclid(1.0));
                }
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    xs
}

/// Measured sup of |f - g| on the unit circle over the adaptive grid.
pub fn sup_error_estimate(f: &RationalFunction, g: &RationalFunction, base_points: usize) -> f64 {
    let xs = adaptive_grid(&[f, g], base_points);
    let tau = std::f64::consts::TAU;
    xs.iter()
        .map(|&x| {
            let theta = tau * x;
            (f.eval_circle(theta) - g.eval_circle(theta)).norm()
        })
        .fold(0.0, f64::max)
}

/// Outcome summary of a reduction run.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    /// Pole count of the output (the selected con-eigenvalue index,
    /// counted from zero, floored at one: a pole-free approximant cannot
    /// attenuate the pole part, so a constant is never produced for a
    /// pole-bearing input); equals n when no reduction was possible.
    pub m: usize,
    /// The con-eigenvalue at the boundary: the expected sup error scale.
    pub lambda_m: f64,
    /// Measured grid sup of |f - g| on the unit circle.
    pub sup_error: f64,
    /// Exponents of the new poles.
    pub root_exponents: Vec<ExponentPole>,
    /// Newton iterations spent on each accepted root.
    pub newton_iters: Vec<u32>,
}

/// Reduces f to the smallest pole count consistent with sup-norm accuracy
/// delta, with the default measurement grid.
pub fn reduce(f: &RationalFunction, delta: f64) -> Result<(RationalFunction, ReductionReport)> {
    reduce_with_grid(f, delta, DEFAULT_GRID_BASE)
}

/// As [`reduce`], with an explicit base grid size for the error measurement.
pub fn reduce_with_grid(
    f: &RationalFunction,
    delta: f64,
    grid_base: usize,
) -> Result<(RationalFunction, ReductionReport)> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive and finite, got {delta}"
        )));
    }
    // A function with no poles is already minimal; the matrix pipeline
    // (and its validator) only applies to pole-bearing inputs.
    if f.n() == 0 {
        let report = ReductionReport {
            m: 0,
            lambda_m: 0.0,
            sup_error: 0.0,
            root_exponents: Vec::new(),
            newton_iters: Vec::new(),
        };
        return Ok((f.clone(), report));
    }
    let diag = validate(f);
    if !diag.is_valid() {
        return Err(Error::InvalidFunction(diag.summary()));
    }
    let passthrough = |lambda_m: f64| {
        let report = ReductionReport {
            m: f.n(),
            lambda_m,
            sup_error: 0.0,
            root_exponents: Vec::new(),
            newton_iters: Vec::new(),
        };
        (f.clone(), report)
    };
    let gens = generators_from_rational(f)?;
    let dec = con_eigvector(&gens, delta)?;
    let sel = dec.lambdas.iter().position(|&l| l <= delta);
    let (m, dec) = match sel {
        None => {
            // Every resolved con-eigenvalue exceeds delta: f cannot be
            // shortened at this accuracy.
            return Ok(passthrough(*dec.lambdas.last().unwrap()));
        }
        Some(0) => {
            // Even the dominant con-eigenvalue is below delta. A constant
            // cannot attenuate the pole part of this symmetric class (any
            // pole-free approximant sits at least lambda_0 away in sup
            // norm), so the smallest useful target is one pole pair. Its
            // construction needs the next con-eigenpair down, which the
            // boundary-truncated decomposition did not keep.
            let full = con_eigvector(&gens, f64::MIN_POSITIVE)?;
            if full.len() < 2 {
                // Numerically rank one: nothing below the dominant pair
                // is representable, so no shorter function exists.
                return Ok(passthrough(*full.lambdas.last().unwrap()));
            }
            (1, full)
        }
        Some(m) => (m, dec),
    };

    let values = coneig_values_of_v(&dec, f, m)?;
    let nodes: Vec<ExponentPole> = f.terms.iter().map(|&(p, _)| p).collect();
    let itp = build_interpolant(&nodes, &values)?;
    // Zeros sit where v is small; seed those nodes first.
    let mut seed_order: Vec<usize> = (0..f.n()).collect();
    seed_order.sort_by(|&a, &b| values[a].norm().partial_cmp(&values[b].norm()).unwrap());
    let (roots, newton_iters) = find_unit_disk_roots(&itp, m, &seed_order)?;
    let betas = solve_residues(&roots, f)?;
    let g = RationalFunction {
        alpha0: f.alpha0,
        terms: roots.iter().copied().zip(betas).collect(),
    };
    let sup = sup_error_estimate(f, &g, grid_base);
    let report = ReductionReport {
        m,
        lambda_m: dec.lambdas[m],
        sup_error: sup,
        root_exponents: roots,
        newton_iters,
    };
    Ok((g, report))
}
