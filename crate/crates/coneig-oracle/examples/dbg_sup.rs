use coneig::reduction::{solve_residues, sup_error_estimate};
use coneig::{ExponentPole, RationalFunction};
use num_complex::Complex64;

fn main() {
    let f = RationalFunction {
        alpha0: Complex64::new(0.3, 0.0),
        terms: vec![
            (ExponentPole::new(std::f64::consts::LN_2, 0.0).unwrap(), Complex64::new(1.0, 0.0)),
            (ExponentPole::new(1.2, 3.0).unwrap(), Complex64::new(0.4, 0.1)),
            (ExponentPole::new(2.0, 5.1).unwrap(), Complex64::new(0.2, -0.2)),
        ],
    };
    let lambda1 = 0.17692566701508794;
    let candidates = [
        ("library current", 0.6079740273504805, 5.324206604621097),
        ("old oracle w   ", 0.6335645537764563, -0.06665434949084628),
        ("fixed V        ", 1.129563983591538, -0.048910501789498),
    ];
    for (label, re, im) in candidates {
        let pole = ExponentPole::new(re, im).unwrap();
        let beta = solve_residues(&[pole], &f).unwrap();
        let g = RationalFunction {
            alpha0: f.alpha0,
            terms: vec![(pole, beta[0])],
        };
        let sup = sup_error_estimate(&f, &g, 2048);
        println!("{label}: sup = {:.6e}  sup/lambda1 = {:.3}", sup, sup / lambda1);
    }
}
