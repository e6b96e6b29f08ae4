use coneig::{ExponentPole, RationalFunction};
use coneig_oracle::assemble::cauchy_mp;
use coneig_oracle::gauge::oracle_coneig;
use coneig_oracle::mp::{abs, bits, to_c64};
use num_complex::Complex64;
use rug::ops::NegAssign;
use rug::Complex;

fn main() {
    let f = RationalFunction {
        alpha0: Complex64::new(0.3, 0.0),
        terms: vec![
            (ExponentPole::new(std::f64::consts::LN_2, 0.0).unwrap(), Complex64::new(1.0, 0.0)),
            (ExponentPole::new(1.2, 3.0).unwrap(), Complex64::new(0.4, 0.1)),
            (ExponentPole::new(2.0, 5.1).unwrap(), Complex64::new(0.2, -0.2)),
        ],
    };
    let digits = 60u32;
    let p = bits(digits);
    let cauchy = cauchy_mp(&f, p).unwrap();
    let dec = oracle_coneig(&f, digits).unwrap();
    let j = 1usize;
    let lambda = dec.lambdas[j].to_f64();

    // Candidate weights: conj(s_i) * u_i (vector entry unconjugated).
    let weights: Vec<Complex> = (0..3)
        .map(|i| {
            let mut sc = cauchy.s[i].clone();
            sc.mut_imag().neg_assign();
            Complex::with_val(p, &sc * &dec.z[(i, j)])
        })
        .collect();
    let eval = |z: &Complex| {
        let mut wv = Complex::new(p);
        for (c, gm) in weights.iter().zip(&cauchy.gamma) {
            let gc = {
                let mut t = gm.clone();
                t.mut_imag().neg_assign();
                t
            };
            let mut den = Complex::with_val(p, &gc * z);
            den = -den;
            den += 1;
            wv += Complex::with_val(p, c / &den);
        }
        wv
    };
    println!("identity check: V(gamma_k) * s_k / lambda vs conj(u_k):");
    for k in 0..3 {
        let vk = eval(&cauchy.gamma[k]);
        let prod = Complex::with_val(p, &vk * &cauchy.s[k]);
        let got = to_c64(&prod) / lambda;
        let want = {
            let mut zb = dec.z[(k, j)].clone();
            zb.mut_imag().neg_assign();
            to_c64(&zb)
        };
        println!("k={k}: got {got:?} want {want:?} rel {:.2e}", (got - want).norm() / want.norm());
    }

    // Newton from the library's (buggy) root seed and from each input pole.
    let newton = |mut z: Complex| -> Complex {
        for _ in 0..60 {
            let wv = eval(&z);
            let mut dw = Complex::new(p);
            for (c, gm) in weights.iter().zip(&cauchy.gamma) {
                let gc = { let mut t = gm.clone(); t.mut_imag().neg_assign(); t };
                let mut den = Complex::with_val(p, &gc * z.clone());
                den = -den;
                den += 1;
                let mut term = Complex::with_val(p, c / &den);
                term *= &gc;
                term /= &den;
                dw += &term;
            }
            let step = Complex::with_val(p, &wv / &dw);
            z -= &step;
            if abs(&step).to_f64() < 1e-50 { break; }
        }
        z
    };
    for (label, start) in [
        ("pole0", Complex64::new(std::f64::consts::LN_2, 0.0)),
        ("pole1", Complex64::new(1.2, 3.0)),
        ("pole2", Complex64::new(2.0, 5.1)),
    ] {
        let z0 = Complex::with_val(p, (-start.re, -start.im)).exp();
        let z = newton(z0);
        let eta = -(z.clone().ln());
        println!(
            "{label}: eta = {:.15} + {:.15}i  |z| = {:.6}  |V(z)| = {:.2e}",
            eta.real().to_f64(),
            eta.imag().to_f64(),
            abs(&z).to_f64(),
            abs(&eval(&z)).to_f64()
        );
    }
}
