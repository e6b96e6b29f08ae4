//! Seeded random rational functions for verification runs.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use coneig::{validate, ExponentPole, RationalFunction};

/// Draws n pole/residue pairs: gamma = rho e^(2 pi i phi) with rho and phi
/// uniform on (0,1), alpha = zeta e^(2 pi i psi) with zeta uniform on
/// (0,10) and psi uniform on (0,1). Boundary draws (rho or zeta exactly 0)
/// are rejected so every pole sits strictly inside the disk with a nonzero
/// residue. The same seed always produces the same function.
pub fn random_function(seed: u64, n: usize) -> RationalFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::with_capacity(n);
    while terms.len() < n {
        let rho: f64 = rng.gen();
        let phi: f64 = rng.gen();
        let zeta = 10.0 * rng.gen::<f64>();
        let psi: f64 = rng.gen();
        if rho <= 0.0 || zeta <= 0.0 {
            continue;
        }
        let pole = ExponentPole::new(-rho.ln(), -TAU * phi).unwrap();
        let alpha = zeta * Complex64::new((TAU * psi).cos(), (TAU * psi).sin());
        terms.push((pole, alpha));
    }
    let f = RationalFunction {
        alpha0: Complex64::new(0.0, 0.0),
        terms,
    };
    assert!(
        validate(&f).is_valid(),
        "seed {seed} drew a degenerate function: {}",
        validate(&f).summary()
    );
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let a = random_function(7, 40);
        let b = random_function(7, 40);
        assert_eq!(a, b);
        assert_eq!(a.n(), 40);
        for &(pole, alpha) in &a.terms {
            // rho in (0,1) <=> re_tau > 0: strictly inside the disk.
            assert!(pole.re_tau() > 0.0);
            assert!(alpha.norm() > 0.0 && alpha.norm() < 10.0);
        }
        let c = random_function(8, 40);
        assert_ne!(a, c);
    }
}
