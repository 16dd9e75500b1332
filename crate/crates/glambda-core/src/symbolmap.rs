//! The projectively equivariant symbol map σ_λ, its inverse quantization,
//! the sl2 action on symbols, and first-principles linear solvers that
//! re-derive the symbol map and classify invariant symmetric operators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num::traits::{One, Zero};

use crate::densityops::{
    lie_derivative, symmetrized_derivative_pattern, DiffOp, PolyField, Weight, XPoly,
};
use crate::error::Error;
use crate::linalg;
use crate::rings::{
    binomial, generalized_binomial, lagrange_interpolate, rat, rat_int, LambdaPoly, Rational,
};

/// A fiberwise-polynomial function on T*ℝ: a finite sum of terms
/// `c(λ)·x^m·ξ^p`, keyed by (ξ-power, x-power).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolPoly {
    // key is (xipow, xpow)
    terms: BTreeMap<(usize, usize), LambdaPoly>,
}

impl SymbolPoly {
    pub fn zero() -> Self {
        SymbolPoly::default()
    }

    pub fn one() -> Self {
        SymbolPoly::term(0, 0, LambdaPoly::one())
    }

    pub fn term(xpow: usize, xipow: usize, coeff: LambdaPoly) -> Self {
        let mut s = SymbolPoly::zero();
        s.add_term(xpow, xipow, coeff);
        s
    }

    pub fn scalar(c: LambdaPoly) -> Self {
        SymbolPoly::term(0, 0, c)
    }

    /// `f(x)·ξ^p`.
    pub fn from_xpoly(p: usize, f: &XPoly) -> Self {
        let mut s = SymbolPoly::zero();
        for (m, c) in f.coeffs().iter().enumerate() {
            s.add_term(m, p, c.clone());
        }
        s
    }

    fn add_term(&mut self, xpow: usize, xipow: usize, coeff: LambdaPoly) {
        if coeff.is_zero() {
            return;
        }
        let key = (xipow, xpow);
        let entry = self.terms.entry(key).or_insert_with(LambdaPoly::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Top ξ-power, or `None` for the zero symbol.
    pub fn xi_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|&(p, _)| p)
    }

    /// The coefficient of ξ^p as an x-polynomial.
    pub fn component(&self, xipow: usize) -> XPoly {
        let mut coeffs: Vec<LambdaPoly> = Vec::new();
        for (&(p, x), c) in self.terms.range((xipow, 0)..=(xipow, usize::MAX)) {
            debug_assert_eq!(p, xipow);
            if coeffs.len() <= x {
                coeffs.resize(x + 1, LambdaPoly::zero());
            }
            coeffs[x] = c.clone();
        }
        XPoly::from_lambda_coeffs(coeffs)
    }

    /// Iterates terms as `((xpow, xipow), coeff)` in key order (ξ, then x).
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &LambdaPoly)> {
        self.terms.iter().map(|(&(p, x), c)| ((x, p), c))
    }

    pub fn scale(&self, c: &LambdaPoly) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (&(p, x), coeff) in &self.terms {
            out.add_term(x, p, coeff * c);
        }
        out
    }

    /// Exact substitution x = `v`, leaving a polynomial in ξ.
    pub fn eval_x(&self, v: &Rational) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        let top = self.xi_degree().map_or(0, |d| d);
        for p in 0..=top {
            let c = self.component(p).eval_x(v);
            out.add_term(0, p, c);
        }
        out
    }
}

impl Add for &SymbolPoly {
    type Output = SymbolPoly;
    fn add(self, rhs: &SymbolPoly) -> SymbolPoly {
        let mut out = self.clone();
        for (&(p, x), c) in &rhs.terms {
            out.add_term(x, p, c.clone());
        }
        out
    }
}

impl Sub for &SymbolPoly {
    type Output = SymbolPoly;
    fn sub(self, rhs: &SymbolPoly) -> SymbolPoly {
        let mut out = self.clone();
        for (&(p, x), c) in &rhs.terms {
            out.add_term(x, p, -c);
        }
        out
    }
}

impl Neg for &SymbolPoly {
    type Output = SymbolPoly;
    fn neg(self) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (&(p, x), c) in &self.terms {
            out.add_term(x, p, -c);
        }
        out
    }
}

impl Mul for &SymbolPoly {
    type Output = SymbolPoly;
    /// The commutative product of fiberwise polynomials.
    fn mul(self, rhs: &SymbolPoly) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (&(p1, x1), c1) in &self.terms {
            for (&(p2, x2), c2) in &rhs.terms {
                out.add_term(x1 + x2, p1 + p2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&(p, x), c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if !c.is_one() || (x == 0 && p == 0) {
                factors.push(format!("({c})"));
            }
            if x > 0 {
                factors.push(if x == 1 { "x".into() } else { format!("x^{x}") });
            }
            if p > 0 {
                factors.push(if p == 1 { "xi".into() } else { format!("xi^{p}") });
            }
            parts.push(factors.join("*"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which sign goes into the binomial factor of the α coefficients.
///
/// `Printed` uses `C(2λ−p, j−p)`; `Corrected` (the default) uses
/// `C(−2λ−p, j−p)`, the variant fixed by the equivariance solver. The
/// printed variant is kept purely as a documented regression guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum SignConvention {
    Printed,
    #[default]
    Corrected,
}

/// The coefficient `α_p^j = C(j,p)·C(±2λ−p, j−p) / C(j+p+1, 2p+1)` of the
/// equivariant symbol map; requires `p ≤ j`.
pub fn alpha_coefficient(p: usize, j: usize, conv: SignConvention) -> Result<LambdaPoly, Error> {
    if p > j {
        return Err(Error::AlphaIndex { p, j });
    }
    let two_lambda = match conv {
        SignConvention::Printed => LambdaPoly::monomial(rat_int(2), 1),
        SignConvention::Corrected => LambdaPoly::monomial(rat_int(-2), 1),
    };
    let arg = &two_lambda - &LambdaPoly::constant_int(p as i64);
    let numer = generalized_binomial(&arg, j - p)
        .scale(&Rational::from_integer(binomial(j, p)));
    let denom = Rational::from_integer(binomial(j + p + 1, 2 * p + 1));
    Ok(numer.scale(&denom.recip()))
}

/// A table of α coefficients for 0 ≤ p ≤ j ≤ n. Either filled from a sign
/// convention or produced by the equivariance solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTable {
    n: usize,
    entries: BTreeMap<(usize, usize), LambdaPoly>,
}

impl AlphaTable {
    pub fn from_convention(n: usize, conv: SignConvention) -> AlphaTable {
        let mut entries = BTreeMap::new();
        for p in 0..=n {
            for j in p..=n {
                let alpha = alpha_coefficient(p, j, conv).expect("p <= j");
                if !alpha.is_zero() {
                    entries.insert((p, j), alpha);
                }
            }
        }
        AlphaTable { n, entries }
    }

    fn from_entries(n: usize, entries: BTreeMap<(usize, usize), LambdaPoly>) -> AlphaTable {
        AlphaTable { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The entry α_p^j, zero when absent.
    pub fn get(&self, p: usize, j: usize) -> LambdaPoly {
        self.entries.get(&(p, j)).cloned().unwrap_or_else(LambdaPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &LambdaPoly)> {
        self.entries.iter()
    }
}

/// The symbol map induced by an explicit α table:
/// `σ(A) = Σ_p ā_p(x) ξ^p` with `ā_p = Σ_{j≥p} α_p^j a_j^{(j−p)}`.
pub fn sigma_with_table(op: &DiffOp, table: &AlphaTable) -> SymbolPoly {
    let Some(n) = op.order() else {
        return SymbolPoly::zero();
    };
    assert!(n <= table.n, "alpha table too small for operator order {n}");
    let coeffs: Vec<XPoly> = (0..=n).map(|j| op.coefficient_of(j)).collect();
    let mut out = SymbolPoly::zero();
    for (&(p, j), alpha) in &table.entries {
        if j > n || coeffs[j].is_zero() {
            continue;
        }
        let contrib = coeffs[j].derivative_n(j - p).scale(alpha);
        out = &out + &SymbolPoly::from_xpoly(p, &contrib);
    }
    out
}

/// The projectively equivariant symbol of an operator under the given sign
/// convention.
pub fn sigma_with_convention(op: &DiffOp, conv: SignConvention) -> SymbolPoly {
    let Some(n) = op.order() else {
        return SymbolPoly::zero();
    };
    sigma_with_table(op, &AlphaTable::from_convention(n, conv))
}

/// The projectively equivariant symbol of an operator (default convention).
pub fn sigma(op: &DiffOp) -> SymbolPoly {
    sigma_with_convention(op, SignConvention::default())
}

/// Inverse of [`sigma`]: reconstructs the operator from its full symbol by
/// back-substitution down the triangular system, using the given convention.
pub fn quantize_with_convention(symbol: &SymbolPoly, conv: SignConvention) -> DiffOp {
    let Some(n) = symbol.xi_degree() else {
        return DiffOp::zero();
    };
    let table = AlphaTable::from_convention(n, conv);
    let mut op_coeffs: Vec<XPoly> = vec![XPoly::zero(); n + 1];
    for p in (0..=n).rev() {
        // α_p^p = 1, so a_p = ā_p − Σ_{j>p} α_p^j a_j^{(j−p)}
        let mut a = symbol.component(p);
        #[allow(clippy::needless_range_loop)]
        for j in (p + 1)..=n {
            let alpha = table.get(p, j);
            if alpha.is_zero() || op_coeffs[j].is_zero() {
                continue;
            }
            a = &a - &op_coeffs[j].derivative_n(j - p).scale(&alpha);
        }
        op_coeffs[p] = a;
    }
    let mut out = DiffOp::zero();
    for (j, a) in op_coeffs.iter().enumerate() {
        for (m, c) in a.coeffs().iter().enumerate() {
            out = &out + &DiffOp::term(m, j, c.clone());
        }
    }
    out
}

/// Inverse of [`sigma`] under the default convention.
pub fn quantize(symbol: &SymbolPoly) -> DiffOp {
    quantize_with_convention(symbol, SignConvention::default())
}

/// The principal symbol `a_n(x)·ξ^n` of a nonzero operator.
pub fn principal_symbol(op: &DiffOp) -> Result<SymbolPoly, Error> {
    let n = op.order().ok_or(Error::ZeroOperator)?;
    Ok(SymbolPoly::from_xpoly(n, &op.coefficient_of(n)))
}

/// The canonical lifted action of a vector field on symbols: on a term
/// `f(x)·ξ^p` the field acts by `(X f′ − p X′ f)·ξ^p`, i.e. the coefficient
/// of ξ^p transforms as a density of weight −p.
pub fn symbol_action(field: &PolyField, symbol: &SymbolPoly) -> SymbolPoly {
    let xf = field.coeff_fn();
    let xfp = xf.derivative();
    let mut out = SymbolPoly::zero();
    let Some(top) = symbol.xi_degree() else {
        return out;
    };
    for p in 0..=top {
        let f = symbol.component(p);
        if f.is_zero() {
            continue;
        }
        let mut acted = &xf * &f.derivative();
        if p > 0 {
            acted = &acted - &(&xfp * &f).scale(&LambdaPoly::constant_int(p as i64));
        }
        out = &out + &SymbolPoly::from_xpoly(p, &acted);
    }
    out
}

/// Solution set of the symbol-map equivariance system at a given order.
///
/// In normalized mode (`α_j^j = 1` imposed) `tables` holds the full solution
/// set: a single table when `dimension == 0`. In unnormalized mode the system
/// is homogeneous, `dimension` is the dimension of its solution space and
/// `tables` a basis of it (one generator per ξ-degree).
#[derive(Debug, Clone)]
pub struct SymbolMapSolution {
    pub dimension: usize,
    pub tables: Vec<AlphaTable>,
}

const MAX_SOLVER_ORDER: usize = 6;

/// Deterministic rational sample points for λ.
fn lambda_samples() -> Vec<Rational> {
    let mut samples = vec![rat_int(0), rat_int(1), rat(1, 2), rat_int(2), rat_int(3), rat_int(-1)];
    for t in 2..14i64 {
        samples.push(rat(2 * t + 1, 2)); // 5/2, 7/2, ...
        samples.push(rat_int(-t)); // −2, −3, ...
        samples.push(rat_int(t + 2)); // 4, 5, ...
    }
    samples
}

/// The homogeneous equivariance constraints at a fixed numeric λ, as rows
/// over the unknown α entries (in `unknowns` order).
fn equivariance_rows(
    n: usize,
    unknowns: &[(usize, usize)],
    lambda: &Rational,
) -> Vec<Vec<Rational>> {
    let gens = [PolyField::basis(0), PolyField::basis(1), PolyField::basis(2)];
    let weight = Weight::Numeric(lambda.clone());
    let mut rows = Vec::new();
    for gen in &gens {
        let lie = lie_derivative(gen, &weight);
        for j in 0..=n {
            for m in 0..=(2 * n + 2) {
                let op = DiffOp::term(m, j, LambdaPoly::one());
                let adj = lie.commutator(&op);
                // Probe each unknown with a singleton table; the constraint
                // is linear in the α entries.
                let mut diffs: Vec<SymbolPoly> = Vec::with_capacity(unknowns.len());
                let mut monomials: BTreeSet<(usize, usize)> = BTreeSet::new();
                for &(p, jj) in unknowns {
                    let mut entries = BTreeMap::new();
                    entries.insert((p, jj), LambdaPoly::one());
                    let probe = AlphaTable::from_entries(n, entries);
                    let lhs = sigma_with_table(&adj, &probe);
                    let rhs = symbol_action(gen, &sigma_with_table(&op, &probe));
                    let diff = &lhs - &rhs;
                    for (key, _) in diff.terms() {
                        monomials.insert(key);
                    }
                    diffs.push(diff);
                }
                for &(x, xi) in &monomials {
                    let row: Vec<Rational> = diffs
                        .iter()
                        .map(|d| {
                            let c = d.component(xi).coeff(x);
                            debug_assert!(c.degree().is_none_or(|deg| deg == 0));
                            c.coeff(0)
                        })
                        .collect();
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows
}

/// Re-derives the symbol map from first principles: treats the α_p^j
/// (0 ≤ p ≤ j ≤ n) as unknowns, imposes equivariance of the induced symbol
/// map against the three sl2 generators on a spanning set of operators, and
/// solves the resulting exact linear systems at sampled rational λ, then
/// reconstructs polynomial entries by Lagrange interpolation.
pub fn solve_equivariant_symbol_maps(
    n: usize,
    normalized: bool,
) -> Result<SymbolMapSolution, Error> {
    if n > MAX_SOLVER_ORDER {
        return Err(Error::SolverSize {
            n,
            max: MAX_SOLVER_ORDER,
        });
    }
    let unknowns: Vec<(usize, usize)> = (0..=n)
        .flat_map(|p| (p..=n).map(move |j| (p, j)))
        .collect();
    let cols = unknowns.len();
    let wanted = 2 * n + 2;

    let mut good: Vec<(Rational, Vec<Rational>)> = Vec::new(); // normalized solutions
    let mut min_nullity: Option<usize> = None;
    let mut verified_rows: Vec<(Rational, Vec<Vec<Rational>>)> = Vec::new();

    for sample in lambda_samples() {
        if good.len() >= wanted && (normalized || verified_rows.len() >= wanted) {
            break;
        }
        let rows = equivariance_rows(n, &unknowns, &sample);
        let nullity = linalg::nullspace(rows.clone(), cols).len();
        min_nullity = Some(min_nullity.map_or(nullity, |m: usize| m.min(nullity)));
        if normalized || good.len() < wanted {
            let mut affine: Vec<(Vec<Rational>, Rational)> = rows
                .iter()
                .map(|r| (r.clone(), Rational::zero()))
                .collect();
            for j in 0..=n {
                let col = unknowns.iter().position(|&u| u == (j, j)).expect("diagonal");
                let mut unit = vec![Rational::zero(); cols];
                unit[col] = Rational::one();
                affine.push((unit, Rational::one()));
            }
            if let Some(sol) = linalg::solve_affine(affine, cols) {
                if sol.nullspace.is_empty() {
                    good.push((sample.clone(), sol.particular));
                }
            }
        }
        if !normalized {
            verified_rows.push((sample.clone(), rows));
        }
    }

    if good.len() < wanted {
        // The normalized system failed to be uniquely solvable at enough
        // sample points; nothing sensible to interpolate.
        return Ok(SymbolMapSolution {
            dimension: min_nullity.unwrap_or(0),
            tables: Vec::new(),
        });
    }

    // Interpolate the unique normalized table entry-by-entry.
    let mut entries = BTreeMap::new();
    for (idx, &(p, j)) in unknowns.iter().enumerate() {
        let points: Vec<(Rational, Rational)> = good
            .iter()
            .take(wanted)
            .map(|(s, v)| (s.clone(), v[idx].clone()))
            .collect();
        let poly = lagrange_interpolate(&points);
        if !poly.is_zero() {
            entries.insert((p, j), poly);
        }
    }
    let normalized_table = AlphaTable::from_entries(n, entries);

    if normalized {
        return Ok(SymbolMapSolution {
            dimension: 0,
            tables: vec![normalized_table],
        });
    }

    // Homogeneous mode: the solution space is spanned by the ξ-degree rows
    // of the normalized table (one free scalar per graded component).
    // Construct those candidates and verify them against the sampled
    // constraint matrices before reporting them as a basis.
    let dimension = min_nullity.unwrap_or(0);
    let mut basis = Vec::new();
    for p0 in 0..=n {
        let mut entries = BTreeMap::new();
        for j in p0..=n {
            let e = normalized_table.get(p0, j);
            if !e.is_zero() {
                entries.insert((p0, j), e);
            }
        }
        basis.push(AlphaTable::from_entries(n, entries));
    }
    let all_verified = verified_rows.iter().take(wanted).all(|(sample, rows)| {
        basis.iter().all(|table| {
            let vector: Vec<Rational> = unknowns
                .iter()
                .map(|&(p, j)| table.get(p, j).eval(sample))
                .collect();
            rows.iter().all(|row| {
                let dot = row
                    .iter()
                    .zip(&vector)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                dot.is_zero()
            })
        })
    });
    Ok(SymbolMapSolution {
        dimension,
        tables: if all_verified && basis.len() == dimension {
            basis
        } else {
            Vec::new()
        },
    })
}

/// An sl2-equivariant symmetric n-linear differential operator on fields,
/// written in the derivative-pattern ansatz
/// `Σ_p β_p (X″_1⋯X″_p X′_{p+1}⋯X′_{p+m} X_{p+m+1}⋯X_n)_+` with `2p+m = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantOperator {
    n: usize,
    k: usize,
    betas: Vec<(usize, Rational)>,
}

impl InvariantOperator {
    pub fn arity(&self) -> usize {
        self.n
    }

    /// Total derivative order k.
    pub fn order(&self) -> usize {
        self.k
    }

    /// The coefficient β_p (zero when the pattern is absent).
    pub fn beta(&self, p: usize) -> Rational {
        self.betas
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|(_, b)| b.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn betas(&self) -> &[(usize, Rational)] {
        &self.betas
    }

    /// Evaluates the operator on `n` fields.
    pub fn apply(&self, fields: &[PolyField]) -> XPoly {
        assert_eq!(fields.len(), self.n, "arity mismatch");
        let mut out = XPoly::zero();
        for (p, beta) in &self.betas {
            let m = self.k - 2 * p;
            let pattern = symmetrized_derivative_pattern(fields, *p, m);
            out = &out + &pattern.scale(&LambdaPoly::constant(beta.clone()));
        }
        out
    }

    /// Rescales so that the lowest-p coefficient is 1.
    pub fn normalized(&self) -> InvariantOperator {
        let Some((_, first)) = self.betas.iter().find(|(_, b)| !b.is_zero()) else {
            return self.clone();
        };
        let inv = first.recip();
        InvariantOperator {
            n: self.n,
            k: self.k,
            betas: self.betas.iter().map(|(p, b)| (*p, b * &inv)).collect(),
        }
    }
}

/// Solution space of the invariant-operator classification at arity `n` and
/// target weight `mu`.
#[derive(Debug, Clone)]
pub struct InvariantSolution {
    pub dimension: usize,
    pub basis: Vec<InvariantOperator>,
}

/// Classifies the sl2-equivariant symmetric n-linear differential operators
/// from fields to densities of weight `mu`, solving for the constants β_p of
/// the derivative-pattern ansatz at order `k = mu + n`. The solution space
/// always comes out 0- or 1-dimensional.
pub fn solve_invariant_operators(n: usize, mu: i64) -> InvariantSolution {
    assert!(n >= 1, "arity must be positive");
    let empty = InvariantSolution {
        dimension: 0,
        basis: Vec::new(),
    };
    let k_signed = mu + n as i64;
    if k_signed < 0 {
        return empty;
    }
    let k = k_signed as usize;
    // patterns (p, m = k − 2p) that fit n slots
    let patterns: Vec<usize> = (0..=(k / 2)).filter(|&p| p + (k - 2 * p) <= n).collect();
    if patterns.is_empty() {
        return empty;
    }
    let mu_rat = rat_int(mu);
    let gens = [PolyField::basis(0), PolyField::basis(1), PolyField::basis(2)];

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for gen in &gens {
        let xf = gen.coeff_fn();
        let xfp = xf.derivative();
        for tuple in (0..3usize).combinations_with_replacement(n) {
            let fields: Vec<PolyField> = tuple.iter().map(|&i| PolyField::basis(i)).collect();
            // E_p = X·g′ + μX′·g − Σ_i g(… [X,X_i] …), one column per β_p
            let mut constraints: Vec<XPoly> = Vec::with_capacity(patterns.len());
            for &p in &patterns {
                let m = k - 2 * p;
                let g = symmetrized_derivative_pattern(&fields, p, m);
                let mut e = &(&xf * &g.derivative())
                    + &(&xfp * &g).scale(&LambdaPoly::constant(mu_rat.clone()));
                for i in 0..n {
                    let mut subst = fields.clone();
                    subst[i] = gen.bracket(&fields[i]);
                    e = &e - &symmetrized_derivative_pattern(&subst, p, m);
                }
                constraints.push(e);
            }
            let max_deg = constraints
                .iter()
                .filter_map(XPoly::degree)
                .max()
                .map_or(0, |d| d + 1);
            for xpow in 0..max_deg {
                let row: Vec<Rational> = constraints
                    .iter()
                    .map(|e| {
                        let c = e.coeff(xpow);
                        debug_assert!(c.degree().is_none_or(|deg| deg == 0));
                        c.coeff(0)
                    })
                    .collect();
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }

    let null = linalg::nullspace(rows, patterns.len());
    let basis = null
        .into_iter()
        .map(|v| InvariantOperator {
            n,
            k,
            betas: patterns
                .iter()
                .zip(v)
                .filter(|(_, b)| !b.is_zero())
                .map(|(&p, b)| (p, b))
                .collect(),
        })
        .collect::<Vec<_>>();
    InvariantSolution {
        dimension: basis.len(),
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densityops::{adjoint_action, symmetrized_product};
    use crate::rings::rat;

    fn l_op(i: usize) -> DiffOp {
        lie_derivative(&PolyField::basis(i), &Weight::Symbolic)
    }

    #[test]
    fn alpha_examples() {
        // α_j^j = 1 for any j, either convention
        for conv in [SignConvention::Printed, SignConvention::Corrected] {
            for j in 0..=5 {
                assert!(alpha_coefficient(j, j, conv).unwrap().is_one());
            }
        }
        // corrected values fixed by the equivariance solver
        assert_eq!(
            alpha_coefficient(0, 1, SignConvention::Corrected).unwrap(),
            LambdaPoly::from_ints(&[0, -1])
        );
        assert_eq!(
            alpha_coefficient(1, 2, SignConvention::Corrected).unwrap(),
            LambdaPoly::from_coeffs(vec![rat(-1, 2), rat(-1, 1)])
        );
        // α_0^2 = λ(2λ+1)/3
        assert_eq!(
            alpha_coefficient(0, 2, SignConvention::Corrected).unwrap(),
            LambdaPoly::from_coeffs(vec![rat(0, 1), rat(1, 3), rat(2, 3)])
        );
        assert!(alpha_coefficient(2, 1, SignConvention::Corrected).is_err());
    }

    #[test]
    fn sigma_examples() {
        // σ(L_{e2}) = x²ξ
        assert_eq!(sigma(&l_op(2)), SymbolPoly::term(2, 1, LambdaPoly::one()));
        // σ([L_{e1}L_{e1}]_+) = 2x²ξ² + (2/3)λ(λ−1)
        let sym2 = symmetrized_product(&[l_op(1), l_op(1)]).unwrap();
        let expected = &SymbolPoly::term(2, 2, LambdaPoly::constant_int(2))
            + &SymbolPoly::scalar(LambdaPoly::from_coeffs(vec![
                rat(0, 1),
                rat(-2, 3),
                rat(2, 3),
            ]));
        assert_eq!(sigma(&sym2), expected);
        // an order-0 operator is its own symbol
        let a0 = DiffOp::term(3, 0, LambdaPoly::from_ints(&[1, 5]));
        assert_eq!(sigma(&a0), SymbolPoly::term(3, 0, LambdaPoly::from_ints(&[1, 5])));
    }

    #[test]
    fn quantize_examples() {
        // quantize(xξ) = x∂ + λ
        let s = SymbolPoly::term(1, 1, LambdaPoly::one());
        assert_eq!(quantize(&s), l_op(1));
        // constants quantize to multiplication operators
        let c = SymbolPoly::scalar(LambdaPoly::from_ints(&[7]));
        assert_eq!(quantize(&c), DiffOp::scalar(LambdaPoly::from_ints(&[7])));
        // round trip on a mixed operator
        let op = &DiffOp::term(2, 3, LambdaPoly::from_ints(&[1, 2]))
            + &DiffOp::term(0, 1, LambdaPoly::from_ints(&[3]));
        assert_eq!(quantize(&sigma(&op)), op);
    }

    #[test]
    fn principal_symbol_examples() {
        let l2 = l_op(2);
        assert_eq!(
            principal_symbol(&l2).unwrap(),
            SymbolPoly::term(2, 1, LambdaPoly::one())
        );
        let op = &DiffOp::term(0, 3, LambdaPoly::one()) + &DiffOp::term(1, 1, LambdaPoly::one());
        assert_eq!(
            principal_symbol(&op).unwrap(),
            SymbolPoly::term(0, 3, LambdaPoly::one())
        );
        let c = DiffOp::scalar(LambdaPoly::from_ints(&[5]));
        assert_eq!(
            principal_symbol(&c).unwrap(),
            SymbolPoly::scalar(LambdaPoly::from_ints(&[5]))
        );
        assert_eq!(principal_symbol(&DiffOp::zero()), Err(Error::ZeroOperator));
    }

    #[test]
    fn symbol_action_examples() {
        // e0 differentiates coefficients
        let s = SymbolPoly::term(3, 2, LambdaPoly::one());
        assert_eq!(
            symbol_action(&PolyField::basis(0), &s),
            SymbolPoly::term(2, 2, LambdaPoly::constant_int(3))
        );
        // (e2, ξ) → −2xξ, matching σ([L_{e2}, ∂]) = σ(−2L_{e1}) = −2xξ
        let xi = SymbolPoly::term(0, 1, LambdaPoly::one());
        assert_eq!(
            symbol_action(&PolyField::basis(2), &xi),
            SymbolPoly::term(1, 1, LambdaPoly::constant_int(-2))
        );
        // (e1, x²ξ²) → 0
        let s = SymbolPoly::term(2, 2, LambdaPoly::one());
        assert!(symbol_action(&PolyField::basis(1), &s).is_zero());
    }

    #[test]
    fn equivariance_for_sl2_generators() {
        let op = &(&DiffOp::term(3, 2, LambdaPoly::one())
            + &DiffOp::term(1, 1, LambdaPoly::from_ints(&[0, 2])))
            + &DiffOp::term(4, 0, LambdaPoly::from_ints(&[1]));
        for i in 0..=2 {
            let field = PolyField::basis(i);
            let lhs = sigma(&adjoint_action(&field, &op));
            let rhs = symbol_action(&field, &sigma(&op));
            assert_eq!(lhs, rhs, "generator e{i}");
        }
    }

    #[test]
    fn equivariance_fails_beyond_sl2() {
        // the map is projectively, not fully, equivariant
        let op = DiffOp::term(0, 2, LambdaPoly::one());
        let cubic = PolyField::basis(3);
        let lhs = sigma(&adjoint_action(&cubic, &op));
        let rhs = symbol_action(&cubic, &sigma(&op));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn convention_guard() {
        // under the printed convention the first-order fixture already fails
        let s = sigma_with_convention(&l_op(2), SignConvention::Printed);
        assert_ne!(s, SymbolPoly::term(2, 1, LambdaPoly::one()));
    }

    #[test]
    fn solver_small_orders() {
        let sol = solve_equivariant_symbol_maps(1, true).unwrap();
        assert_eq!(sol.dimension, 0);
        assert_eq!(sol.tables.len(), 1);
        assert_eq!(sol.tables[0].get(0, 1), LambdaPoly::from_ints(&[0, -1]));
        assert!(sol.tables[0].get(0, 0).is_one());
        assert!(sol.tables[0].get(1, 1).is_one());

        let sol = solve_equivariant_symbol_maps(2, true).unwrap();
        let table = &sol.tables[0];
        assert_eq!(table.get(0, 1), LambdaPoly::from_ints(&[0, -1]));
        assert_eq!(
            table.get(1, 2),
            LambdaPoly::from_coeffs(vec![rat(-1, 2), rat(-1, 1)])
        );
        assert_eq!(
            table.get(0, 2),
            LambdaPoly::from_coeffs(vec![rat(0, 1), rat(1, 3), rat(2, 3)])
        );

        let sol = solve_equivariant_symbol_maps(2, false).unwrap();
        assert_eq!(sol.dimension, 3);
        assert_eq!(sol.tables.len(), 3);
    }

    #[test]
    fn invariant_operator_examples() {
        // (n=2, μ=0): dimension 1 with basis (X′Y′)_+ − 2(X″Y)_+
        let sol = solve_invariant_operators(2, 0);
        assert_eq!(sol.dimension, 1);
        let op = sol.basis[0].normalized();
        assert_eq!(op.beta(0), rat_int(1));
        assert_eq!(op.beta(1), rat_int(-2));
        // (n=2, μ=−1): odd order, dimension 0
        assert_eq!(solve_invariant_operators(2, -1).dimension, 0);
        // (n=1, μ=−1): the identity, dimension 1
        let sol = solve_invariant_operators(1, -1);
        assert_eq!(sol.dimension, 1);
        let op = sol.basis[0].normalized();
        let val = op.apply(&[PolyField::basis(2)]);
        assert_eq!(val, XPoly::x_power(2));
    }
}
