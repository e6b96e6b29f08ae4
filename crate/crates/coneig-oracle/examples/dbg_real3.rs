use coneig::{ExponentPole, RationalFunction};
use coneig_oracle::assemble::cauchy_mp;
use coneig_oracle::gauge::oracle_coneig;
use coneig_oracle::mp::bits;
use coneig_oracle::roots::{exponent_errors, refine_roots};
use num_complex::Complex64;

fn main() {
    // All-real data: the conjugation fix is invisible here, so this
    // isolates pure root-finder method error.
    let f = RationalFunction {
        alpha0: Complex64::new(0.3, 0.0),
        terms: vec![
            (ExponentPole::new(2.0f64.ln(), 0.0).unwrap(), Complex64::new(1.0, 0.0)),
            (ExponentPole::new(4.0f64.ln(), 0.0).unwrap(), Complex64::new(0.5, 0.0)),
            (ExponentPole::new(8.0f64.ln(), 0.0).unwrap(), Complex64::new(0.25, 0.0)),
        ],
    };
    let digits = 60;
    let cauchy = cauchy_mp(&f, bits(digits)).unwrap();
    let dec = oracle_coneig(&f, digits).unwrap();
    let delta = (dec.lambdas[0].to_f64() * dec.lambdas[1].to_f64()).sqrt();
    let (g, report) = coneig::reduce(&f, delta).unwrap();
    println!("m={} lambda_m={:e} sup={:e} sup/lambda={:.3}",
        report.m, report.lambda_m, report.sup_error, report.sup_error / report.lambda_m);
    let starts: Vec<ExponentPole> = g.terms.iter().map(|t| t.0).collect();
    let refined = refine_roots(&cauchy, &dec, report.m, &starts).unwrap();
    for (k, r) in refined.iter().enumerate() {
        let (re_rel, im_err) = exponent_errors(starts[k], r);
        println!("root {k}: lib re {:.15}  refined re {:.15}  re_rel {:.2e}  im_err {:.2e}",
            starts[k].re_tau(), r.real().to_f64(), re_rel, im_err);
    }
}
