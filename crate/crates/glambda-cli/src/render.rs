//! LaTeX rendering with the same canonical term order as the JSON output:
//! operators by (∂-power desc, x-power asc), symbols by (ξ-power desc,
//! x-power asc), enveloping-algebra words lexicographically.

use glambda_core::densityops::DiffOp;
use glambda_core::rings::{LambdaPoly, Rational};
use glambda_core::sl2uea::UeaElement;
use glambda_core::symbolmap::SymbolPoly;
use num::traits::{One, Signed};

fn latex_exponent(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        2..=9 => format!("{base}^{e}"),
        _ => format!("{base}^{{{e}}}"),
    }
}

/// `3`, `-3`, `\frac{1}{2}`, `-\frac{1}{2}`.
fn latex_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let mag = r.abs();
    format!("{sign}\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
}

/// A λ-polynomial in descending powers, e.g. `\lambda^2 - \lambda`.
pub fn latex_lambda_poly(p: &LambdaPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    let deg = p.degree().expect("nonzero");
    for i in (0..=deg).rev() {
        let c = p.coeff(i);
        if num::traits::Zero::is_zero(&c) {
            continue;
        }
        let var = latex_exponent("\\lambda", i);
        terms.push(coeff_times(&c, &var));
    }
    join_terms(terms)
}

/// Renders `c·factors`, eliding unit coefficients next to factors.
fn coeff_times(c: &Rational, factors: &str) -> String {
    if factors.is_empty() {
        return latex_rational(c);
    }
    if c.is_one() {
        return factors.to_string();
    }
    if (-c).is_one() {
        return format!("-{factors}");
    }
    format!("{}{factors}", latex_rational(c))
}

/// Renders a (λ-polynomial coefficient, variable factors) term.
fn poly_times(c: &LambdaPoly, factors: &str) -> String {
    let monomials = c.coeffs().iter().filter(|r| !num::traits::Zero::is_zero(*r)).count();
    match monomials {
        0 => "0".to_string(),
        1 => {
            let i = c.degree().expect("nonzero");
            let lam = latex_exponent("\\lambda", i);
            let combined = if lam.is_empty() {
                factors.to_string()
            } else if factors.is_empty() {
                lam
            } else {
                format!("{lam} {factors}")
            };
            coeff_times(&c.coeff(i), &combined)
        }
        _ => {
            if factors.is_empty() {
                latex_lambda_poly(c)
            } else {
                format!("({}){factors}", latex_lambda_poly(c))
            }
        }
    }
}

/// Joins rendered terms with ` + ` / ` - `, folding leading signs.
fn join_terms(terms: Vec<String>) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

pub fn latex_diffop(op: &DiffOp) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let mut keyed: Vec<((usize, usize), &LambdaPoly)> = op.terms().collect();
    keyed.sort_by(|((x1, d1), _), ((x2, d2), _)| d2.cmp(d1).then(x1.cmp(x2)));
    let terms = keyed
        .into_iter()
        .map(|((x, d), c)| {
            let factors = format!("{}{}", latex_exponent("x", x), latex_exponent("\\partial", d));
            poly_times(c, &factors)
        })
        .collect();
    join_terms(terms)
}

pub fn latex_symbol(s: &SymbolPoly) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut keyed: Vec<((usize, usize), &LambdaPoly)> = s.terms().collect();
    keyed.sort_by(|((x1, p1), _), ((x2, p2), _)| p2.cmp(p1).then(x1.cmp(x2)));
    let terms = keyed
        .into_iter()
        .map(|((x, p), c)| {
            let factors = format!("{}{}", latex_exponent("x", x), latex_exponent("\\xi", p));
            poly_times(c, &factors)
        })
        .collect();
    join_terms(terms)
}

pub fn latex_uea(u: &UeaElement) -> String {
    if u.is_zero() {
        return "0".to_string();
    }
    let terms = u
        .terms()
        .map(|(w, c)| {
            if w.is_empty() {
                return poly_times(c, "");
            }
            // group runs of equal generators into powers
            let mut factors: Vec<String> = Vec::new();
            let gens = w.gens();
            let mut i = 0;
            while i < gens.len() {
                let mut j = i;
                while j < gens.len() && gens[j] == gens[i] {
                    j += 1;
                }
                factors.push(latex_exponent(&format!("e_{}", gens[i].index()), j - i));
                i = j;
            }
            poly_times(c, &factors.join(" "))
        })
        .collect();
    join_terms(terms)
}
