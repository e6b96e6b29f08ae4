use coneig::expsum::{inverse_power_expsum, rational_from_expsum, ExpSumParams};
use coneig::ExponentPole;
use coneig_oracle::assemble::cauchy_mp;
use coneig_oracle::gauge::oracle_coneig;
use coneig_oracle::mp::bits;
use coneig_oracle::roots::{exponent_errors, refine_roots};
use num_complex::Complex64;
use std::time::Instant;

fn main() {
    let params = ExpSumParams { h: 0.6, m1: 38, m2: 3, p: 3 };
    let terms = inverse_power_expsum(&params).unwrap();
    let f = rational_from_expsum(&terms, 0.3, Complex64::new(0.25, 0.0)).unwrap();
    println!("n = {} poles, re_tau min {:.3e}", f.n(),
        f.terms.iter().map(|t| t.0.re_tau()).fold(f64::INFINITY, f64::min));
    let t0 = Instant::now();
    let (g, report) = coneig::reduce(&f, 1e-10).unwrap();
    println!("reduce: m={} lambda_m={:e} sup={:e} sup/lambda={:.3} ({:?})",
        report.m, report.lambda_m, report.sup_error,
        report.sup_error / report.lambda_m, t0.elapsed());
    let digits = 120;
    let t1 = Instant::now();
    let cauchy = cauchy_mp(&f, bits(digits)).unwrap();
    let dec = oracle_coneig(&f, digits).unwrap();
    println!("oracle: {:?}  lambda_m oracle {:e}", t1.elapsed(), dec.lambdas[report.m].to_f64());
    let starts: Vec<ExponentPole> = g.terms.iter().map(|t| t.0).collect();
    let refined = refine_roots(&cauchy, &dec, report.m, &starts).unwrap();
    let mut worst_re = 0.0f64;
    let mut worst_im = 0.0f64;
    for (k, r) in refined.iter().enumerate() {
        let (re_rel, im_err) = exponent_errors(starts[k], r);
        if re_rel > worst_re { worst_re = re_rel; }
        if im_err > worst_im { worst_im = im_err; }
        if re_rel > 1e-10 || im_err > 1e-10 {
            println!("  root {k}: re {:.6e} refined {:.6e} re_rel {:.2e} im_err {:.2e}",
                starts[k].re_tau(), r.real().to_f64(), re_rel, im_err);
        }
    }
    println!("worst re_rel = {worst_re:.3e}  worst im_err = {worst_im:.3e}");
}
