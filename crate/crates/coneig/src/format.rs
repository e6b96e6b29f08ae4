//! JSON interchange format for rational functions.
//!
//! Every numeric field is a decimal string, not a JSON number: the values
//! routinely span hundreds of orders of magnitude and exponents carry
//! meaning down to the last bit, so parsing must not depend on how a JSON
//! library chooses to round numbers. Strings are written in the shortest
//! form that parses back to the identical f64, which makes
//! serialize-then-parse the exact identity on finite values.
//!
//! Layout:
//!
//! ```json
//! {
//!   "alpha0": { "re": "0.25", "im": "0.0" },
//!   "terms": [
//!     { "re_tau": "1e-9", "im_tau": "3.5", "residue": { "re": "1.0", "im": "-2.0" } }
//!   ]
//! }
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cauchy::RationalFunction;
use crate::error::{Error, Result};
use crate::kernels::ExponentPole;

#[derive(Debug, Serialize, Deserialize)]
struct ComplexDto {
    re: String,
    im: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermDto {
    re_tau: String,
    im_tau: String,
    residue: ComplexDto,
}

#[derive(Debug, Serialize, Deserialize)]
struct FunctionDto {
    alpha0: ComplexDto,
    terms: Vec<TermDto>,
}

/// Shortest decimal string that parses back to exactly `x`.
pub fn f64_to_decimal(x: f64) -> String {
    format!("{x:?}")
}

/// Parses a decimal string, rejecting anything that is not a finite f64.
pub fn parse_decimal(s: &str, field: &str) -> Result<f64> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::InvalidFunction(format!("field {field}: not a number: {s:?}")))?;
    if !x.is_finite() {
        return Err(Error::InvalidFunction(format!(
            "field {field}: must be finite, got {s:?}"
        )));
    }
    Ok(x)
}

fn complex_to_dto(z: Complex64) -> ComplexDto {
    ComplexDto {
        re: f64_to_decimal(z.re),
        im: f64_to_decimal(z.im),
    }
}

fn complex_from_dto(dto: &ComplexDto, field: &str) -> Result<Complex64> {
    Ok(Complex64::new(
        parse_decimal(&dto.re, &format!("{field}.re"))?,
        parse_decimal(&dto.im, &format!("{field}.im"))?,
    ))
}

/// Serializes a rational function as pretty-printed JSON.
pub fn to_json(f: &RationalFunction) -> Result<String> {
    if !f.alpha0.is_finite() {
        return Err(Error::InvalidFunction("alpha0 must be finite".into()));
    }
    let dto = FunctionDto {
        alpha0: complex_to_dto(f.alpha0),
        terms: f
            .terms
            .iter()
            .map(|&(pole, residue)| TermDto {
                re_tau: f64_to_decimal(pole.re_tau()),
                im_tau: f64_to_decimal(pole.im_tau()),
                residue: complex_to_dto(residue),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto)
        .map_err(|e| Error::InvalidFunction(format!("serialization failed: {e}")))
}

/// Parses a rational function from JSON text.
pub fn from_json(text: &str) -> Result<RationalFunction> {
    let dto: FunctionDto = serde_json::from_str(text)
        .map_err(|e| Error::InvalidFunction(format!("malformed function file: {e}")))?;
    let alpha0 = complex_from_dto(&dto.alpha0, "alpha0")?;
    let mut terms = Vec::with_capacity(dto.terms.len());
    for (i, t) in dto.terms.iter().enumerate() {
        let re_tau = parse_decimal(&t.re_tau, &format!("terms[{i}].re_tau"))?;
        let im_tau = parse_decimal(&t.im_tau, &format!("terms[{i}].im_tau"))?;
        let pole = ExponentPole::new(re_tau, im_tau)?;
        let residue = complex_from_dto(&t.residue, &format!("terms[{i}].residue"))?;
        terms.push((pole, residue));
    }
    Ok(RationalFunction { alpha0, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let f = RationalFunction {
            alpha0: Complex64::new(0.25, -1.5e-200),
            terms: vec![
                (
                    ExponentPole::new(1e-300, 0.0).unwrap(),
                    Complex64::new(1.0, -2.0),
                ),
                (
                    ExponentPole::new(3.5, 6.2831).unwrap(),
                    Complex64::new(-0.0, 7.25e100),
                ),
                (
                    ExponentPole::new(0.1 + 0.2, -12345.6789).unwrap(),
                    Complex64::new(f64::MIN_POSITIVE, -f64::MAX / 2.0),
                ),
            ],
        };
        let text = to_json(&f).unwrap();
        let g = from_json(&text).unwrap();
        assert_eq!(f, g);
        // And a second pass is textually identical.
        assert_eq!(text, to_json(&g).unwrap());
    }

    #[test]
    fn empty_terms_round_trip() {
        let f = RationalFunction {
            alpha0: Complex64::new(-0.0, 0.0),
            terms: Vec::new(),
        };
        let g = from_json(&to_json(&f).unwrap()).unwrap();
        assert_eq!(f, g);
        assert!(g.alpha0.re.is_sign_negative());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        for text in [
            "",
            "{",
            r#"{"alpha0":{"re":"0","im":"0"}}"#,
            r#"{"alpha0":{"re":"zero","im":"0"},"terms":[]}"#,
            r#"{"alpha0":{"re":"inf","im":"0"},"terms":[]}"#,
            r#"{"alpha0":{"re":"0","im":"0"},"terms":[{"re_tau":"-1","im_tau":"0","residue":{"re":"1","im":"0"}}]}"#,
        ] {
            assert!(from_json(text).is_err(), "accepted: {text}");
        }
    }

    #[test]
    fn numbers_parse_in_plain_and_exponent_form() {
        let text = r#"{
            "alpha0": {"re": "2.5e-1", "im": "0.0"},
            "terms": [
                {"re_tau": "0.001", "im_tau": "1e0", "residue": {"re": "3", "im": "-4e-2"}}
            ]
        }"#;
        let f = from_json(text).unwrap();
        assert_eq!(f.alpha0.re, 0.25);
        assert_eq!(f.terms[0].0.re_tau(), 0.001);
        assert_eq!(f.terms[0].0.im_tau(), 1.0);
        assert_eq!(f.terms[0].1, Complex64::new(3.0, -0.04));
    }
}
