//! The closed-form symbol of symmetrized products of Lie derivatives: the
//! invariant multilinear operators A_k, the polynomials P^n_k(λ), and the
//! end-to-end identity
//! `σ_λ([L_{X_1}⋯L_{X_n}]_+) = Σ_{k even} P^n_k(λ)·A_k(X_1,…,X_n)·ξ^{n−k}`.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::traits::{One, Zero};

use crate::densityops::{
    lie_derivative, symmetrized_derivative_pattern, symmetrized_product, DiffOp, PolyField,
    Weight, XPoly,
};
use crate::error::Error;
use crate::rings::{
    binomial, factorial, generalized_binomial, rat_int, stirling2, LambdaPoly, Rational,
};
use crate::symbolmap::{sigma_with_convention, SignConvention, SymbolPoly};

/// The invariant operator
/// `A_k = Σ_{2p+m=k} C(k/2,p)·(−2)^p·(X″_1⋯X″_p X′_{p+1}⋯X′_{p+m} X_{p+m+1}⋯X_n)_+`
/// evaluated on `n` sl2 fields; requires `k` even with `0 ≤ k ≤ 2n`.
///
/// The symmetrization is the full S_n permutation sum over the input slots,
/// so the result is symmetric and n-linear in the fields.
pub fn ak_operator(k: usize, fields: &[PolyField]) -> Result<XPoly, Error> {
    if !k.is_multiple_of(2) {
        return Err(Error::OddOrder { k });
    }
    let n = fields.len();
    if k > 2 * n {
        return Err(Error::OrderOutOfRange { n, k });
    }
    debug_assert!(fields.iter().all(PolyField::is_sl2));
    let mut out = XPoly::zero();
    for p in 0..=(k / 2) {
        let m = k - 2 * p;
        if p + m > n {
            continue;
        }
        let mut c = Rational::from_integer(binomial(k / 2, p));
        c *= Rational::from_integer(BigInt::from(-2).pow(p as u32));
        let pattern = symmetrized_derivative_pattern(fields, p, m);
        out = &out + &pattern.scale(&LambdaPoly::constant(c));
    }
    Ok(out)
}

/// Uncached evaluation of the coefficient polynomial
/// `P^n_k(λ) = Σ_p Σ_{l=n−k}^n (l−n+k)!·C(l,n−k)²·C(±2λ−n+k, l−n+k)/C(n−k+l+1, 2n−2k+1)·C(n,p)·{p l}·λ^{n−p}`
/// for even `k ≤ n`.
fn compute_pnk(n: usize, k: usize, conv: SignConvention) -> Result<LambdaPoly, Error> {
    if !k.is_multiple_of(2) {
        return Err(Error::OddOrder { k });
    }
    if k > n || n == 0 {
        return Err(Error::OrderOutOfRange { n, k });
    }
    let q = n - k;
    let two_lambda = match conv {
        SignConvention::Printed => LambdaPoly::monomial(rat_int(2), 1),
        SignConvention::Corrected => LambdaPoly::monomial(rat_int(-2), 1),
    };
    let arg = &two_lambda - &LambdaPoly::constant_int(q as i64);
    // the l-dependent factor is independent of p
    let mut l_factors: Vec<LambdaPoly> = Vec::with_capacity(n + 1);
    for l in q..=n {
        let mut c = Rational::from_integer(factorial(l - q));
        let b = binomial(l, q);
        c *= Rational::from_integer(&b * &b);
        c /= Rational::from_integer(binomial(q + l + 1, 2 * n - 2 * k + 1));
        l_factors.push(generalized_binomial(&arg, l - q).scale(&c));
    }
    let mut sum = LambdaPoly::zero();
    for p in 0..=n {
        let cn = Rational::from_integer(binomial(n, p));
        for l in q..=n {
            let s = stirling2(p, l);
            if s.is_zero() {
                continue;
            }
            let coeff = &cn * &Rational::from_integer(s);
            let term = l_factors[l - q].scale(&coeff);
            let shifted = &term * &LambdaPoly::monomial(Rational::one(), n - p);
            sum = &sum + &shifted;
        }
    }
    Ok(sum)
}

/// Write-once memo of P^n_k values keyed by (n, k, convention). Concurrent
/// fills of the same key agree because the computation is pure.
pub struct PnkTable {
    cache: Mutex<BTreeMap<(usize, usize, SignConvention), LambdaPoly>>,
}

impl PnkTable {
    pub fn new() -> PnkTable {
        PnkTable {
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn get(&self, n: usize, k: usize, conv: SignConvention) -> Result<LambdaPoly, Error> {
        if let Some(v) = self.cache.lock().unwrap().get(&(n, k, conv)) {
            return Ok(v.clone());
        }
        let v = compute_pnk(n, k, conv)?;
        self.cache
            .lock()
            .unwrap()
            .entry((n, k, conv))
            .or_insert_with(|| v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.lock().unwrap().is_empty()
    }
}

impl Default for PnkTable {
    fn default() -> Self {
        PnkTable::new()
    }
}

fn global_table() -> &'static PnkTable {
    static TABLE: OnceLock<PnkTable> = OnceLock::new();
    TABLE.get_or_init(PnkTable::new)
}

/// The coefficient polynomial P^n_k(λ), served from a process-wide
/// write-once memo. Requires `k` even with `0 ≤ k ≤ n`.
pub fn pnk_polynomial(n: usize, k: usize, conv: SignConvention) -> Result<LambdaPoly, Error> {
    global_table().get(n, k, conv)
}

/// The closed-form right-hand side
/// `Σ_{0≤k≤n, k even} P^n_k(λ)·A_k(X_1,…,X_n)·ξ^{n−k}` for sl2 fields.
pub fn symbol_of_symmetrized(fields: &[PolyField]) -> Result<SymbolPoly, Error> {
    symbol_of_symmetrized_with(fields, SignConvention::default())
}

pub fn symbol_of_symmetrized_with(
    fields: &[PolyField],
    conv: SignConvention,
) -> Result<SymbolPoly, Error> {
    if fields.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let n = fields.len();
    let mut out = SymbolPoly::zero();
    for k in (0..=n).step_by(2) {
        let ak = ak_operator(k, fields)?;
        if ak.is_zero() {
            continue;
        }
        let pnk = pnk_polynomial(n, k, conv)?;
        out = &out + &SymbolPoly::from_xpoly(n - k, &ak.scale(&pnk));
    }
    Ok(out)
}

/// Checks the closed-form identity on one tuple of sl2 fields: the
/// equivariant symbol of the symmetrized product of Lie derivatives against
/// the assembled right-hand side, exactly as λ-polynomial identities.
pub fn verify_theorem(fields: &[PolyField]) -> Result<bool, Error> {
    let ops: Vec<DiffOp> = fields
        .iter()
        .map(|f| lie_derivative(f, &Weight::Symbolic))
        .collect();
    let lhs = sigma_with_convention(&symmetrized_product(&ops)?, SignConvention::Corrected);
    let rhs = symbol_of_symmetrized_with(fields, SignConvention::Corrected)?;
    Ok(lhs == rhs)
}

/// The expansion `(x∂)^n = Σ_l {n l}·x^l·∂^l`.
pub fn xd_power_expansion(n: usize) -> DiffOp {
    let mut out = DiffOp::zero();
    for l in 0..=n {
        let s = stirling2(n, l);
        if s.is_zero() && !(n == 0 && l == 0) {
            continue;
        }
        out = &out + &DiffOp::term(l, l, LambdaPoly::constant(Rational::from_integer(s)));
    }
    out
}
