//! Differential operators with x-polynomial, λ-polynomial coefficients: the
//! associative algebra they form under composition, Lie derivatives on
//! densities, and symmetrized products.
//!
//! Operators are kept in normal order (x-powers left of ∂-powers), so
//! equality is exact term comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num::bigint::BigInt;
use num::traits::{One, Zero};

use crate::error::Error;
use crate::rings::{binomial, LambdaPoly, Rational};

/// A polynomial in x with λ-polynomial coefficients, stored by ascending
/// x-power. Doubles as a polynomial density φ(x) (the (dx)^λ factor is
/// implicit) and as the value space of invariant multilinear operators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XPoly {
    coeffs: Vec<LambdaPoly>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::constant(LambdaPoly::one())
    }

    pub fn constant(c: LambdaPoly) -> Self {
        XPoly::from_lambda_coeffs(vec![c])
    }

    /// `c·x^m`.
    pub fn monomial(c: LambdaPoly, m: usize) -> Self {
        if c.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![LambdaPoly::zero(); m + 1];
        coeffs[m] = c;
        XPoly { coeffs }
    }

    /// `x^m`.
    pub fn x_power(m: usize) -> Self {
        XPoly::monomial(LambdaPoly::one(), m)
    }

    pub fn from_lambda_coeffs(mut coeffs: Vec<LambdaPoly>) -> Self {
        while coeffs.last().is_some_and(LambdaPoly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    /// λ-free polynomial from rational coefficients, ascending.
    pub fn from_rational_coeffs(coeffs: &[Rational]) -> Self {
        XPoly::from_lambda_coeffs(
            coeffs.iter().map(|c| LambdaPoly::constant(c.clone())).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, m: usize) -> LambdaPoly {
        self.coeffs.get(m).cloned().unwrap_or_else(LambdaPoly::zero)
    }

    pub fn coeffs(&self) -> &[LambdaPoly] {
        &self.coeffs
    }

    /// d/dx.
    pub fn derivative(&self) -> XPoly {
        if self.coeffs.len() <= 1 {
            return XPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| c.scale(&Rational::from_integer(BigInt::from(m))))
            .collect();
        XPoly::from_lambda_coeffs(coeffs)
    }

    /// n-th derivative.
    pub fn derivative_n(&self, n: usize) -> XPoly {
        let mut acc = self.clone();
        for _ in 0..n {
            acc = acc.derivative();
        }
        acc
    }

    /// Exact substitution x = `v`; the result is a polynomial in λ.
    pub fn eval_x(&self, v: &Rational) -> LambdaPoly {
        let mut acc = LambdaPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &LambdaPoly::constant(v.clone())) + c;
        }
        acc
    }

    pub fn scale(&self, c: &LambdaPoly) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly::from_lambda_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_lambda_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_lambda_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![LambdaPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        XPoly::from_lambda_coeffs(coeffs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A polynomial vector field `X(x)∂`. Coefficients are rational (λ-free);
/// the sl2 basis fields are `e_i = x^i ∂` for i = 0, 1, 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyField {
    coeffs: Vec<Rational>,
}

impl PolyField {
    /// Field from the coefficients of X(x), ascending powers of x.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyField { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyField::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    /// The basis field `e_i = x^i ∂`; valid for any i.
    pub fn basis(i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); i + 1];
        coeffs[i] = Rational::one();
        PolyField { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when the field lies in sl2 (coefficient degree ≤ 2).
    pub fn is_sl2(&self) -> bool {
        self.coeffs.len() <= 3
    }

    /// The coefficient function X(x) as an x-polynomial.
    pub fn coeff_fn(&self) -> XPoly {
        XPoly::from_rational_coeffs(&self.coeffs)
    }

    /// The Lie bracket of fields, `[X,Y] = (XY′ − X′Y)∂`.
    pub fn bracket(&self, other: &PolyField) -> PolyField {
        let a = self.coeff_fn();
        let b = other.coeff_fn();
        let c = &(&a * &b.derivative()) - &(&a.derivative() * &b);
        let coeffs = c
            .coeffs()
            .iter()
            .map(|lp| {
                debug_assert!(lp.degree().is_none_or(|d| d == 0));
                lp.coeff(0)
            })
            .collect();
        PolyField::new(coeffs)
    }
}

impl fmt::Display for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})d", self.coeff_fn().eval_display())
    }
}

impl XPoly {
    fn eval_display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| match m {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{m}"),
            })
            .collect();
        parts.join(" + ")
    }
}

/// The weight carried by a Lie derivative: the formal λ by default, or a
/// fixed rational for solver sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    Symbolic,
    Numeric(Rational),
}

impl Weight {
    fn as_poly(&self) -> LambdaPoly {
        match self {
            Weight::Symbolic => LambdaPoly::lambda(),
            Weight::Numeric(v) => LambdaPoly::constant(v.clone()),
        }
    }
}

/// A differential operator `Σ c(λ)·x^m·∂^n` in canonical form: terms keyed
/// by (∂-power, x-power) with nonzero λ-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    // key is (dpow, xpow)
    terms: BTreeMap<(usize, usize), LambdaPoly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    /// The identity operator (multiplication by 1).
    pub fn identity() -> Self {
        DiffOp::term(0, 0, LambdaPoly::one())
    }

    /// Multiplication by a λ-polynomial scalar.
    pub fn scalar(c: LambdaPoly) -> Self {
        DiffOp::term(0, 0, c)
    }

    /// The single term `coeff·x^xpow·∂^dpow`.
    pub fn term(xpow: usize, dpow: usize, coeff: LambdaPoly) -> Self {
        let mut op = DiffOp::zero();
        op.add_term(xpow, dpow, coeff);
        op
    }

    /// Multiplication by an x-polynomial (an order-0 operator).
    pub fn from_xpoly(p: &XPoly) -> Self {
        let mut op = DiffOp::zero();
        for (m, c) in p.coeffs().iter().enumerate() {
            op.add_term(m, 0, c.clone());
        }
        op
    }

    fn add_term(&mut self, xpow: usize, dpow: usize, coeff: LambdaPoly) {
        if coeff.is_zero() {
            return;
        }
        let key = (dpow, xpow);
        let entry = self.terms.entry(key).or_insert_with(LambdaPoly::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Operator order: the maximal ∂-power, or `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|&(d, _)| d)
    }

    /// Iterates terms as `((xpow, dpow), coeff)` in key order (d, then x).
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &LambdaPoly)> {
        self.terms.iter().map(|(&(d, x), c)| ((x, d), c))
    }

    /// The coefficient a_j(x) of ∂^j, as an x-polynomial.
    pub fn coefficient_of(&self, dpow: usize) -> XPoly {
        let mut coeffs: Vec<LambdaPoly> = Vec::new();
        for (&(d, x), c) in self.terms.range((dpow, 0)..=(dpow, usize::MAX)) {
            debug_assert_eq!(d, dpow);
            if coeffs.len() <= x {
                coeffs.resize(x + 1, LambdaPoly::zero());
            }
            coeffs[x] = c.clone();
        }
        XPoly::from_lambda_coeffs(coeffs)
    }

    pub fn scale(&self, c: &LambdaPoly) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&(d, x), coeff) in &self.terms {
            out.add_term(x, d, coeff * c);
        }
        out
    }

    /// The composed operator self∘rhs, renormalized to canonical form via
    /// the Leibniz rule `∂^n ∘ x^m = Σ_k C(n,k)·m!/(m−k)!·x^{m−k}∂^{n−k}`.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&(n1, m1), c1) in &self.terms {
            for (&(n2, m2), c2) in &rhs.terms {
                let c = c1 * c2;
                for k in 0..=n1.min(m2) {
                    // C(n1,k) · m2!/(m2−k)!
                    let mut scale = binomial(n1, k);
                    for i in 0..k {
                        scale *= BigInt::from(m2 - i);
                    }
                    out.add_term(
                        m1 + m2 - k,
                        n1 + n2 - k,
                        c.scale(&Rational::from_integer(scale)),
                    );
                }
            }
        }
        out
    }

    /// `[self, rhs] = self∘rhs − rhs∘self`.
    pub fn commutator(&self, rhs: &DiffOp) -> DiffOp {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// Applies the operator to a polynomial density: `Σ a_i(x)·f^(i)(x)`.
    /// This is the brute-force oracle for `compose`.
    pub fn apply(&self, f: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (&(d, x), c) in &self.terms {
            let part = f.derivative_n(d);
            out = &out + &(&part * &XPoly::monomial(c.clone(), x));
        }
        out
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&(d, x), c) in &rhs.terms {
            out.add_term(x, d, c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&(d, x), c) in &rhs.terms {
            out.add_term(x, d, -c);
        }
        out
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&(d, x), c) in &self.terms {
            out.add_term(x, d, -c);
        }
        out
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl fmt::Display for DiffOp {
    /// ASCII form for diagnostics: `x^2*d^2 + (2*l + 2)*x*d + 2*l`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&(d, x), c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if !c.is_one() || (x == 0 && d == 0) {
                factors.push(format!("({c})"));
            }
            if x > 0 {
                factors.push(if x == 1 { "x".into() } else { format!("x^{x}") });
            }
            if d > 0 {
                factors.push(if d == 1 { "d".into() } else { format!("d^{d}") });
            }
            parts.push(factors.join("*"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Lie derivative of weight `w` along a field: `L_X = X(x)∂ + w·X′(x)`.
pub fn lie_derivative(field: &PolyField, weight: &Weight) -> DiffOp {
    let mut op = DiffOp::zero();
    for (m, c) in field.coeffs().iter().enumerate() {
        op.add_term(m, 1, LambdaPoly::constant(c.clone()));
    }
    let w = weight.as_poly();
    let xprime = field.coeff_fn().derivative();
    for (m, c) in xprime.coeffs().iter().enumerate() {
        op.add_term(m, 0, c * &w);
    }
    op
}

/// The adjoint action of a vector field on operators,
/// `ad_X(A) = [L_X, A]` with symbolic weight. Preserves operator order.
pub fn adjoint_action(field: &PolyField, op: &DiffOp) -> DiffOp {
    lie_derivative(field, &Weight::Symbolic).commutator(op)
}

/// Runs `f` on every permutation of `0..n`.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    for perm in (0..n).permutations(n) {
        f(&perm);
    }
}

/// The symmetrized product `Σ_{τ∈S_n} A_{τ(1)}∘⋯∘A_{τ(n)}` over all `n!`
/// orderings, with no 1/n! normalization.
pub fn symmetrized_product(ops: &[DiffOp]) -> Result<DiffOp, Error> {
    if ops.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut out = DiffOp::zero();
    for_each_permutation(ops.len(), |perm| {
        let mut prod = ops[perm[0]].clone();
        for &i in &perm[1..] {
            prod = prod.compose(&ops[i]);
        }
        out = &out + &prod;
    });
    Ok(out)
}

/// The symmetrized derivative pattern
/// `(X″_1 ⋯ X″_p · X′_{p+1} ⋯ X′_{p+m} · X_{p+m+1} ⋯ X_n)_+`:
/// the full S_n permutation sum over the input slots, with the first `p`
/// slots twice differentiated and the next `m` once.
pub fn symmetrized_derivative_pattern(fields: &[PolyField], p: usize, m: usize) -> XPoly {
    let n = fields.len();
    assert!(p + m <= n, "pattern does not fit the slot count");
    let funcs: Vec<XPoly> = fields.iter().map(PolyField::coeff_fn).collect();
    let firsts: Vec<XPoly> = funcs.iter().map(XPoly::derivative).collect();
    let seconds: Vec<XPoly> = firsts.iter().map(XPoly::derivative).collect();
    let mut out = XPoly::zero();
    for_each_permutation(n, |perm| {
        let mut prod = XPoly::one();
        for (slot, &i) in perm.iter().enumerate() {
            let factor = if slot < p {
                &seconds[i]
            } else if slot < p + m {
                &firsts[i]
            } else {
                &funcs[i]
            };
            if factor.is_zero() {
                prod = XPoly::zero();
                break;
            }
            prod = &prod * factor;
        }
        out = &out + &prod;
    });
    out
}
