//! Property suites over randomized inputs: spectral positivity and
//! ordering, con-eigenpair residuals, the Jacobi stopping bound,
//! triangular-solve identities, Hermitian symmetry of the generator
//! representation, and JSON round-tripping.

use num_complex::Complex64;
use proptest::prelude::*;

use coneig::cauchy::{eval_entry, generators_from_rational, validate, RationalFunction};
use coneig::cholesky::cholesky_full;
use coneig::coneig::con_eigvector;
use coneig::format::{from_json, to_json};
use coneig::kernels::ExponentPole;
use coneig::matrix::Matrix;
use coneig::qr::qr_householder_pivoted;
use coneig::svd::jacobi_svd_left;

fn finite_pole() -> impl Strategy<Value = ExponentPole> {
    // log-uniform radial exponent, uniform angle
    (-6.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(lg, im)| {
        ExponentPole::new(10f64.powf(lg), im).unwrap()
    })
}

fn residue() -> impl Strategy<Value = Complex64> {
    (-2.0..1.0f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(lg, ph)| Complex64::from_polar(10f64.powf(lg), ph))
}

fn rational_function(max_terms: usize) -> impl Strategy<Value = RationalFunction> {
    (
        residue(),
        proptest::collection::vec((finite_pole(), residue()), 1..=max_terms),
    )
        .prop_map(|(alpha0, terms)| RationalFunction { alpha0, terms })
        .prop_filter("distinct poles", |f| validate(f).is_valid())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn con_eigenvalues_positive_and_sorted(f in rational_function(10)) {
        let gens = generators_from_rational(&f).unwrap();
        let dec = con_eigvector(&gens, f64::MIN_POSITIVE).unwrap();
        for (j, &l) in dec.lambdas.iter().enumerate() {
            prop_assert!(l > 0.0, "lambda[{j}] = {l}");
            if j > 0 {
                prop_assert!(dec.lambdas[j - 1] >= l, "out of order at {j}");
            }
        }
    }

    #[test]
    fn con_eigen_residuals_small(f in rational_function(10)) {
        let gens = generators_from_rational(&f).unwrap();
        let dec = con_eigvector(&gens, f64::MIN_POSITIVE).unwrap();
        let n = f.n();
        let cmax = (0..n)
            .map(|i| eval_entry(&gens, i, i).re)
            .fold(0.0f64, f64::max);
        // Residual floor of verifying with a dense double matvec: entries
        // of size cmax round at eps * cmax per term. Down to that floor
        // the residual must be relatively small; the floor itself is
        // certified against the multiprecision gauge elsewhere.
        let floor = 64.0 * n as f64 * f64::EPSILON * cmax;
        for j in 0..dec.len() {
            let z = dec.z.col(j);
            let mut resid = 0.0f64;
            let mut znorm = 0.0f64;
            for i in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &zk) in z.iter().enumerate() {
                    acc += eval_entry(&gens, i, k) * zk;
                }
                acc -= dec.lambdas[j] * z[i].conj();
                resid += acc.norm_sqr();
                znorm += z[i].norm_sqr();
            }
            let resid = resid.sqrt();
            let znorm = znorm.sqrt();
            prop_assert!(
                resid <= 1e-10 * dec.lambdas[j] * znorm + floor * znorm,
                "pair {j}: residual {resid:e}, lambda {:e}",
                dec.lambdas[j]
            );
        }
    }

    #[test]
    fn jacobi_stop_bound_holds(
        seed in any::<u64>(),
        n in 2usize..9,
    ) {
        // Random graded upper-triangular input.
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut r = Matrix::zeros(n, n);
        for j in 0..n {
            let scale = 10f64.powi(-(2 * j as i32));
            for i in 0..=j {
                r[(i, j)] = Complex64::new(next() - 0.5, next() - 0.5) * scale;
            }
            if r[(j, j)].norm() < 1e-3 * scale {
                r[(j, j)] += Complex64::new(scale, 0.0);
            }
        }
        let (u_l, sigma) = jacobi_svd_left(&r, 30).unwrap();
        // W = R^H U has orthogonal columns with norms sigma; the stop
        // threshold allows m * eps relative to the norm product.
        let mut a = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                a[(i, j)] = r[(j, i)].conj();
            }
        }
        let w = a.mul(&u_l);
        for p in 0..n {
            for q in p + 1..n {
                let wp = w.col(p);
                let wq = w.col(q);
                let dot: Complex64 = wp
                    .iter()
                    .zip(wq)
                    .map(|(&x, &y)| x.conj() * y)
                    .sum();
                let bound = 8.0 * n as f64 * f64::EPSILON * sigma[p] * sigma[q];
                prop_assert!(
                    dot.norm() <= bound.max(1e-300),
                    "columns {p},{q}: dot {:e} bound {bound:e}",
                    dot.norm()
                );
            }
        }
    }

    #[test]
    fn solve_reproduces_right_hand_side(
        f in rational_function(10),
        seed in any::<u64>(),
    ) {
        let gens = generators_from_rational(&f).unwrap();
        let pc = cholesky_full(&gens).unwrap();
        let n = f.n();
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let rhs: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(next() - 0.5, next() - 0.5)).collect();
        let x = pc.solve_pd(&rhs).unwrap();
        let cmax = (0..n)
            .map(|i| eval_entry(&gens, i, i).re)
            .fold(0.0f64, f64::max);
        let xmax = x.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &xk) in x.iter().enumerate() {
                acc += eval_entry(&gens, i, k) * xk;
            }
            let err = (acc - rhs[i]).norm();
            let tol = 200.0 * n as f64 * f64::EPSILON * cmax * xmax
                + 64.0 * f64::EPSILON * rhs[i].norm();
            prop_assert!(err <= tol, "row {i}: err {err:e} tol {tol:e}");
        }
    }

    #[test]
    fn generator_entries_are_hermitian(f in rational_function(10)) {
        let gens = generators_from_rational(&f).unwrap();
        let n = f.n();
        for i in 0..n {
            for j in 0..n {
                let cij = eval_entry(&gens, i, j);
                let cji = eval_entry(&gens, j, i);
                prop_assert_eq!(cij, cji.conj(), "entry ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn qr_reconstructs_with_pivoting(f in rational_function(8)) {
        // The factor path exercised end to end: X from the Cholesky,
        // then QR of X with row and column pivoting.
        let gens = generators_from_rational(&f).unwrap();
        let pc = cholesky_full(&gens).unwrap();
        let n = f.n();
        let m = pc.m();
        let x = pc.scattered_factor();
        let qr = qr_householder_pivoted(&x).unwrap();
        let q = qr.q_full();
        // |R| diagonal is non-increasing.
        for k in 1..m {
            prop_assert!(
                qr.r[(k, k)].norm() <= qr.r[(k - 1, k - 1)].norm() * (1.0 + 1e-12)
            );
        }
        // Q^H Q = I.
        for p in 0..m {
            for s in 0..m {
                let dot: Complex64 = (0..n)
                    .map(|i| q[(i, p)].conj() * q[(i, s)])
                    .sum();
                let want = if p == s { 1.0 } else { 0.0 };
                prop_assert!(
                    (dot - want).norm() <= 1e-12,
                    "Q columns {p},{s}: {dot}"
                );
            }
        }
    }

    #[test]
    fn json_round_trip_exact(f in rational_function(12)) {
        let text = to_json(&f).unwrap();
        let g = from_json(&text).unwrap();
        prop_assert_eq!(f, g);
    }
}
