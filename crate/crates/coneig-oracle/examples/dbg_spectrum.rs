use coneig::expsum::{inverse_power_expsum, rational_from_expsum, ExpSumParams};
use num_complex::Complex64;

fn main() {
    for (h, m1, m2, p) in [
        (0.5f64, 46u32, 4u32, 1u32),
        (0.5, 46, 4, 2),
        (0.5, 46, 4, 3),
        (0.3, 77, 2, 3),
        (0.45, 51, 3, 3),
        (0.6, 38, 3, 3),
    ] {
        let terms = inverse_power_expsum(&ExpSumParams { h, m1, m2, p }).unwrap();
        let f = rational_from_expsum(&terms, 0.3, Complex64::new(0.25, 0.0)).unwrap();
        let gens = coneig::generators_from_rational(&f).unwrap();
        let dec = coneig::con_eigvector(&gens, 1e-10).unwrap();
        let sel = dec.lambdas.iter().position(|&l| l <= 1e-10);
        let cap = (f.n() - 1) / 2;
        println!(
            "h={h} m1={m1} m2={m2} p={p}: n={} resolved={} first lambda<=1e-10 at {:?} (cap {}) lambda[0]={:.2e} tail={:.2e}",
            f.n(), dec.lambdas.len(), sel, cap, dec.lambdas[0], dec.lambdas.last().unwrap()
        );
    }
}
