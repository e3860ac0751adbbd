//! Polynomial input files.
//!
//! ```json
//! {"degree": 3, "label": "optional", "terms": [{"k": 3, "j": 1, "value": "-2/7"}]}
//! ```
//!
//! Each term is `value · x^(k-j) · y^j` with `0 ≤ j ≤ k ≤ degree`. Values are
//! strings holding an integer, a fraction `p/q` or a decimal; JSON numbers are
//! accepted and read through their decimal text. Alternatively a file may name a
//! generated family: `{"family": "vertical-lines", "n": 6}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::family::{family_polynomial, FAMILY_NAME};
use crate::poly::scalar::{self, Scalar};
use crate::poly::BivariatePolynomial;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub k: u32,
    pub j: u32,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedInput {
    pub label: Option<String>,
    pub polynomial: BivariatePolynomial,
}

pub fn parse_polynomial_file(text: &str) -> Result<ParsedInput, InputError> {
    let file: PolynomialFile = serde_json::from_str(text).map_err(|e| InputError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    file.into_polynomial()
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

impl PolynomialFile {
    pub fn into_polynomial(self) -> Result<ParsedInput, InputError> {
        let invariant = |m: String| Err(InputError::InvariantViolation(m));
        if let Some(name) = &self.family {
            if name != FAMILY_NAME {
                return invariant(format!(
                    "unknown family {name:?} (expected {FAMILY_NAME:?})"
                ));
            }
            if self.terms.is_some() {
                return invariant("a family file must not list terms".into());
            }
            let Some(n) = self.n else {
                return invariant("family file needs \"n\"".into());
            };
            if n < 2 {
                return invariant(format!("family parameter n = {n} must be at least 2"));
            }
            let label = self.label.or_else(|| Some(format!("{FAMILY_NAME} n={n}")));
            return Ok(ParsedInput {
                label,
                polynomial: family_polynomial(n),
            });
        }
        let Some(degree) = self.degree else {
            return invariant("missing \"degree\"".into());
        };
        let Some(terms) = self.terms else {
            return invariant("missing \"terms\"".into());
        };
        if degree == 0 {
            return invariant("degree must be at least 1".into());
        }
        let mut seen = BTreeSet::new();
        let mut h = BivariatePolynomial::zero();
        for (i, t) in terms.iter().enumerate() {
            if t.j > t.k {
                return invariant(format!("term {i}: j = {} exceeds k = {}", t.j, t.k));
            }
            if t.k > degree {
                return invariant(format!("term {i}: k = {} exceeds degree {degree}", t.k));
            }
            if !seen.insert((t.k, t.j)) {
                return invariant(format!("term {i}: duplicate (k, j) = ({}, {})", t.k, t.j));
            }
            let v = value_to_scalar(&t.value).ok_or_else(|| {
                InputError::InvariantViolation(format!("term {i}: cannot read value {}", t.value))
            })?;
            h.add_term(t.k, t.j, v);
        }
        if h.degree() != degree {
            return invariant(format!(
                "declared degree {degree} but the nonzero terms have degree {}",
                h.degree()
            ));
        }
        let c = h.constant_term();
        if c != Scalar::from_integer(0.into()) {
            return invariant(format!(
                "H(0,0) = {} must vanish",
                scalar::format_scalar(&c)
            ));
        }
        Ok(ParsedInput {
            label: self.label,
            polynomial: h,
        })
    }
}

fn value_to_scalar(v: &Value) -> Option<Scalar> {
    match v {
        Value::String(s) => scalar::parse_scalar(s).ok(),
        Value::Number(n) => scalar::parse_scalar(&n.to_string()).ok(),
        _ => None,
    }
}

/// The canonical file for `h`: every nonzero term, exact values as strings.
pub fn polynomial_to_file(h: &BivariatePolynomial, label: Option<&str>) -> PolynomialFile {
    PolynomialFile {
        label: label.map(str::to_string),
        degree: Some(h.degree()),
        terms: Some(
            h.terms()
                .map(|(k, j, v)| TermEntry {
                    k,
                    j,
                    value: Value::String(scalar::format_scalar(v)),
                })
                .collect(),
        ),
        family: None,
        n: None,
    }
}
