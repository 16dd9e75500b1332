//! Properties of the closed-form layer: the symbol identity for symmetrized
//! products, symmetry of the A_k operators, their agreement with the
//! invariant-operator classification, and the x = 1 specialization that
//! pins the P^n_k coefficients.

use glambda_core::closedform::{ak_operator, pnk_polynomial, verify_theorem, xd_power_expansion};
use glambda_core::densityops::{
    lie_derivative, symmetrized_product, DiffOp, PolyField, Weight, XPoly,
};
use glambda_core::rings::{rat, rat_int, LambdaPoly, Rational};
use glambda_core::symbolmap::{sigma, solve_invariant_operators, SignConvention, SymbolPoly};
use proptest::prelude::*;

fn tuples(n: usize) -> Vec<Vec<PolyField>> {
    let count = 3usize.pow(n as u32);
    (0..count)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let i = code % 3;
                    code /= 3;
                    PolyField::basis(i)
                })
                .collect()
        })
        .collect()
}

#[test]
fn theorem_identity_on_all_basis_tuples_up_to_three() {
    for n in 1..=3usize {
        for tuple in tuples(n) {
            assert!(verify_theorem(&tuple).unwrap(), "tuple failed at n = {n}");
        }
    }
}

#[test]
fn pnk_zero_column_is_one_up_to_eight() {
    for n in 1..=8 {
        assert!(pnk_polynomial(n, 0, SignConvention::Corrected).unwrap().is_one());
    }
}

fn arb_sl2_field() -> impl Strategy<Value = PolyField> {
    prop::collection::vec((-6i64..=6, 1i64..=3).prop_map(|(p, q)| rat(p, q)), 0..=3)
        .prop_map(PolyField::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ak_is_symmetric_in_its_inputs(
        fields in prop::collection::vec(arb_sl2_field(), 1..=5).prop_shuffle(),
        half_k in 0usize..=3,
    ) {
        let k = 2 * half_k;
        prop_assume!(k <= 2 * fields.len());
        let mut sorted = fields.clone();
        sorted.sort_by_key(|f| format!("{f}"));
        prop_assert_eq!(
            ak_operator(k, &fields).unwrap(),
            ak_operator(k, &sorted).unwrap()
        );
    }
}

/// The classification solver and the closed-form A_k agree where the
/// one-dimensional space exists (even k ≤ n); beyond that the space is
/// empty even though the A_k formula itself is nonzero.
#[test]
fn ak_spans_the_invariant_space() {
    for n in 1..=4usize {
        for k in (0..=n).step_by(2) {
            let mu = k as i64 - n as i64;
            let sol = solve_invariant_operators(n, mu);
            assert_eq!(sol.dimension, 1, "n = {n}, k = {k}");
            let op = sol.basis[0].normalized();
            // β_0 = 1 matches the closed form's leading pattern coefficient
            for p in 0..=(k / 2) {
                let expected = rat_int(-2).pow(p as i32)
                    * Rational::from_integer(glambda_core::rings::binomial(k / 2, p));
                assert_eq!(op.beta(p), expected, "beta_{p} at n = {n}, k = {k}");
            }
            // and the operators agree pointwise on every basis tuple
            for tuple in tuples(n) {
                assert_eq!(
                    op.apply(&tuple),
                    ak_operator(k, &tuple).unwrap(),
                    "value mismatch at n = {n}, k = {k}"
                );
            }
        }
        for k in ((n + 1)..=(2 * n)).filter(|k| k % 2 == 0) {
            let mu = k as i64 - n as i64;
            assert_eq!(
                solve_invariant_operators(n, mu).dimension,
                0,
                "no invariant operator exists for k = {k} > n = {n}"
            );
            let e2s: Vec<PolyField> = (0..n).map(|_| PolyField::basis(2)).collect();
            assert!(
                !ak_operator(k, &e2s).unwrap().is_zero(),
                "the closed form is still a nonzero formula for k = {k}, n = {n}"
            );
        }
    }
}

#[test]
fn odd_orders_have_no_invariant_operators() {
    for n in 1..=4usize {
        for k in (1..=2 * n).step_by(2) {
            let mu = k as i64 - n as i64;
            assert_eq!(solve_invariant_operators(n, mu).dimension, 0, "n = {n}, k = {k}");
        }
    }
}

/// Specializing every slot to x∂ and evaluating at x = 1 reproduces the
/// coefficient polynomials: σ([L_{x∂}⋯L_{x∂}]_+)|_{x=1} = n!·Σ_k P^n_k ξ^{n−k}.
#[test]
fn x_equals_one_specialization_recovers_pnk() {
    let l1 = lie_derivative(&PolyField::basis(1), &Weight::Symbolic);
    for n in 1..=5usize {
        let ops: Vec<DiffOp> = (0..n).map(|_| l1.clone()).collect();
        let lhs = sigma(&symmetrized_product(&ops).unwrap()).eval_x(&rat_int(1));
        let factorial = Rational::from_integer(glambda_core::rings::factorial(n));
        let mut rhs = SymbolPoly::zero();
        for k in (0..=n).step_by(2) {
            let pnk = pnk_polynomial(n, k, SignConvention::Corrected).unwrap();
            rhs = &rhs + &SymbolPoly::term(0, n - k, pnk.scale(&factorial));
        }
        assert_eq!(lhs, rhs, "n = {n}");
        // equivalently, the plain n-fold composition drops the n!
        let mut composed = DiffOp::identity();
        for _ in 0..n {
            composed = composed.compose(&l1);
        }
        assert_eq!(
            sigma(&composed).eval_x(&rat_int(1)),
            rhs.scale(&LambdaPoly::constant(factorial.recip())),
            "composition form at n = {n}"
        );
    }
}

#[test]
fn xd_expansion_matches_composition() {
    let xd = DiffOp::term(1, 1, LambdaPoly::one());
    let mut composed = DiffOp::identity();
    for n in 0..=6usize {
        assert_eq!(xd_power_expansion(n), composed, "n = {n}");
        composed = composed.compose(&xd);
    }
}

#[test]
fn ak_values_are_lambda_free() {
    for n in 1..=3usize {
        for tuple in tuples(n) {
            for k in (0..=2 * n).step_by(2) {
                let v: XPoly = ak_operator(k, &tuple).unwrap();
                for c in v.coeffs() {
                    assert!(c.degree().is_none_or(|d| d == 0));
                }
            }
        }
    }
}
