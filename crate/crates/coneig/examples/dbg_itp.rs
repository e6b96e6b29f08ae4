use coneig::reduction::{build_interpolant, coneig_values_of_v};
use coneig::{con_eigvector, generators_from_rational, ExponentPole, RationalFunction};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let f = RationalFunction {
        alpha0: c(0.3, 0.0),
        terms: vec![
            (ExponentPole::new(2.0f64.ln(), 0.0).unwrap(), c(1.0, 0.0)),
            (ExponentPole::new(1.2, 3.0).unwrap(), c(0.4, 0.1)),
            (ExponentPole::new(2.0, 5.1).unwrap(), c(0.2, -0.2)),
        ],
    };
    let gens = generators_from_rational(&f).unwrap();
    let dec = con_eigvector(&gens, 1e-14).unwrap();
    println!("lambdas: {:?}", dec.lambdas);
    let m = 1;
    let values = coneig_values_of_v(&dec, &f, m).unwrap();
    println!("values: {values:?}");
    let nodes: Vec<ExponentPole> = f.terms.iter().map(|&(p, _)| p).collect();
    let itp = build_interpolant(&nodes, &values).unwrap();
    println!("coeffs: {:?}", itp.coeffs());
    println!("log_scale: {}", itp.log_scale());

    // Scan the disk for small |q| relative to scale.
    let mut best = (f64::INFINITY, c(0.0, 0.0));
    for i in 0..200 {
        for j in 0..200 {
            let re = 0.005 + 4.0 * i as f64 / 200.0;
            let im = std::f64::consts::TAU * j as f64 / 200.0;
            let eta = c(re, im);
            let (q, a) = itp.quotient_and_scale(eta);
            let rel = q.norm() / a;
            if rel < best.0 {
                best = (rel, eta);
            }
        }
    }
    println!("grid min |q|/A = {:e} at eta = {}", best.0, best.1);

    // Newton by hand from the grid minimum.
    let mut eta = best.1;
    for it in 0..30 {
        let (q, dq) = itp.quotient_with_derivative(eta);
        let step = q / dq;
        eta -= step;
        let (qq, a) = itp.quotient_and_scale(eta);
        println!(
            "it {it}: eta = {eta}, |step| = {:e}, |q|/A = {:e}",
            step.norm(),
            qq.norm() / a
        );
        if step.norm() < 1e-15 {
            break;
        }
    }

    // Local starts from each node, then raw Newton from each.
    for i in 0..3 {
        let ci = itp.coeffs()[i];
        let mut r = c(0.0, 0.0);
        for j in 0..3 {
            if j == i {
                continue;
            }
            r += itp.coeffs()[j] / (nodes[i].gamma() - nodes[j].gamma());
        }
        let z0 = nodes[i].gamma() - ci / r;
        println!(
            "node {i}: gamma = {}, jump z0 = {} (|z0| = {})",
            nodes[i].gamma(),
            z0,
            z0.norm()
        );
        let mut eta = -z0.ln();
        for it in 0..40 {
            let (q, dq) = itp.quotient_with_derivative(eta);
            if !q.is_finite() || !dq.is_finite() {
                println!("  it {it}: nonfinite at eta = {eta}");
                break;
            }
            let step = q / dq;
            eta -= step;
            if step.norm() < 1e-14 {
                let (qq, a) = itp.quotient_and_scale(eta);
                println!(
                    "  converged it {it}: eta = {eta} (re {}), |q|/A = {:e}",
                    eta.re,
                    qq.norm() / a
                );
                break;
            }
            if it == 39 {
                println!("  no convergence, eta = {eta}, |step| = {:e}", step.norm());
            }
        }
    }
}
