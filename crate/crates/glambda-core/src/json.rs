//! Canonical JSON serialization.
//!
//! Emission is bit-exact: rationals print in lowest terms as `"p/q"` (`"p"`
//! when the denominator is 1), λ-polynomials are arrays of those strings by
//! ascending power, and term lists are sorted — (d desc, x asc) for
//! operators, (ξ desc, x asc) for symbols, lexicographic words for
//! enveloping-algebra elements. Parsing accepts any term order and
//! re-canonicalizes.

use num::traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::densityops::DiffOp;
use crate::rings::{LambdaPoly, Rational};
use crate::sl2uea::{UeaElement, Word};
use crate::symbolmap::SymbolPoly;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unexpected value type {found:?}, expected {expected:?}")]
    WrongType { expected: String, found: String },
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("malformed generator word {0:?}")]
    BadWord(String),
}

fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

fn rational_from_string(s: &str) -> Result<Rational, JsonError> {
    let parse_int = |t: &str| {
        t.parse::<num::BigInt>()
            .map_err(|_| JsonError::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(JsonError::BadRational(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

fn lambda_poly_to_strings(p: &LambdaPoly) -> Vec<String> {
    p.coeffs().iter().map(rational_to_string).collect()
}

fn lambda_poly_from_strings(coeffs: &[String]) -> Result<LambdaPoly, JsonError> {
    let parsed: Result<Vec<Rational>, JsonError> =
        coeffs.iter().map(|s| rational_from_string(s)).collect();
    Ok(LambdaPoly::from_coeffs(parsed?))
}

#[derive(Serialize, Deserialize)]
struct DiffOpTermJson {
    x: usize,
    d: usize,
    coeff: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DiffOpJson {
    #[serde(rename = "type")]
    kind: String,
    terms: Vec<DiffOpTermJson>,
}

/// Canonical JSON for an operator: terms sorted by (d desc, x asc).
pub fn diffop_to_json(op: &DiffOp) -> String {
    let mut terms: Vec<((usize, usize), &LambdaPoly)> = op.terms().collect();
    terms.sort_by(|((x1, d1), _), ((x2, d2), _)| d2.cmp(d1).then(x1.cmp(x2)));
    let doc = DiffOpJson {
        kind: "diffop".to_string(),
        terms: terms
            .into_iter()
            .map(|((x, d), c)| DiffOpTermJson {
                x,
                d,
                coeff: lambda_poly_to_strings(c),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serialization cannot fail")
}

pub fn diffop_from_json(s: &str) -> Result<DiffOp, JsonError> {
    let doc: DiffOpJson = serde_json::from_str(s)?;
    if doc.kind != "diffop" {
        return Err(JsonError::WrongType {
            expected: "diffop".to_string(),
            found: doc.kind,
        });
    }
    let mut op = DiffOp::zero();
    for t in doc.terms {
        let c = lambda_poly_from_strings(&t.coeff)?;
        op = &op + &DiffOp::term(t.x, t.d, c);
    }
    Ok(op)
}

#[derive(Serialize, Deserialize)]
struct SymbolTermJson {
    x: usize,
    xi: usize,
    coeff: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SymbolJson {
    #[serde(rename = "type")]
    kind: String,
    terms: Vec<SymbolTermJson>,
}

/// Canonical JSON for a symbol: terms sorted by (ξ desc, x asc).
pub fn symbol_to_json(s: &SymbolPoly) -> String {
    let mut terms: Vec<((usize, usize), &LambdaPoly)> = s.terms().collect();
    terms.sort_by(|((x1, p1), _), ((x2, p2), _)| p2.cmp(p1).then(x1.cmp(x2)));
    let doc = SymbolJson {
        kind: "symbol".to_string(),
        terms: terms
            .into_iter()
            .map(|((x, xi), c)| SymbolTermJson {
                x,
                xi,
                coeff: lambda_poly_to_strings(c),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serialization cannot fail")
}

pub fn symbol_from_json(s: &str) -> Result<SymbolPoly, JsonError> {
    let doc: SymbolJson = serde_json::from_str(s)?;
    if doc.kind != "symbol" {
        return Err(JsonError::WrongType {
            expected: "symbol".to_string(),
            found: doc.kind,
        });
    }
    let mut out = SymbolPoly::zero();
    for t in doc.terms {
        let c = lambda_poly_from_strings(&t.coeff)?;
        out = &out + &SymbolPoly::term(t.x, t.xi, c);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct UeaTermJson {
    word: String,
    coeff: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct UeaJson {
    #[serde(rename = "type")]
    kind: String,
    terms: Vec<UeaTermJson>,
}

/// Canonical JSON for an enveloping-algebra element: words sorted
/// lexicographically.
pub fn uea_to_json(u: &UeaElement) -> String {
    // BTreeMap iteration over Word is already lexicographic
    let doc = UeaJson {
        kind: "uea".to_string(),
        terms: u
            .terms()
            .map(|(w, c)| UeaTermJson {
                word: w.to_string(),
                coeff: lambda_poly_to_strings(c),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serialization cannot fail")
}

pub fn uea_from_json(s: &str) -> Result<UeaElement, JsonError> {
    let doc: UeaJson = serde_json::from_str(s)?;
    if doc.kind != "uea" {
        return Err(JsonError::WrongType {
            expected: "uea".to_string(),
            found: doc.kind,
        });
    }
    let mut out = UeaElement::zero();
    for t in doc.terms {
        let w = Word::parse(&t.word).ok_or_else(|| JsonError::BadWord(t.word.clone()))?;
        let c = lambda_poly_from_strings(&t.coeff)?;
        out.add_word(w, c);
    }
    Ok(out)
}

/// Bare-array JSON for a λ-polynomial: rational strings, ascending powers.
pub fn lambda_poly_to_json(p: &LambdaPoly) -> String {
    serde_json::to_string(&lambda_poly_to_strings(p)).expect("serialization cannot fail")
}

pub fn lambda_poly_from_json(s: &str) -> Result<LambdaPoly, JsonError> {
    let coeffs: Vec<String> = serde_json::from_str(s)?;
    lambda_poly_from_strings(&coeffs)
}
