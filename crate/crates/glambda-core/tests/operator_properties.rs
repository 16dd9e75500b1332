//! Algebra laws for differential operators: associativity of composition,
//! agreement with the density-application oracle, the Lie-morphism property
//! of the weighted Lie derivative, and symmetrized-product invariances.

use glambda_core::densityops::{
    adjoint_action, lie_derivative, symmetrized_product, DiffOp, PolyField, Weight, XPoly,
};
use glambda_core::rings::{rat, LambdaPoly, Rational};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(LambdaPoly::from_coeffs)
}

fn arb_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(((0usize..=4, 0usize..=4), arb_poly(2)), 0..=4).prop_map(|terms| {
        let mut op = DiffOp::zero();
        for ((x, d), c) in terms {
            op = &op + &DiffOp::term(x, d, c);
        }
        op
    })
}

fn arb_field(max_deg: usize) -> impl Strategy<Value = PolyField> {
    prop::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(PolyField::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_associates(a in arb_op(), b in arb_op(), c in arb_op()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }
}

proptest! {
    #[test]
    fn composition_matches_density_application(a in arb_op(), b in arb_op()) {
        let ab = a.compose(&b);
        for m in 0..=8 {
            let f = XPoly::x_power(m);
            prop_assert_eq!(ab.apply(&f), a.apply(&b.apply(&f)));
        }
    }

    #[test]
    fn composition_order_bound(a in arb_op(), b in arb_op()) {
        let ab = a.compose(&b);
        match (a.order(), b.order(), ab.order()) {
            (Some(na), Some(nb), Some(nab)) => prop_assert!(nab <= na + nb),
            (Some(_), Some(_), None) => {} // cancellation is allowed
            (_, _, composed) => prop_assert_eq!(composed, None),
        }
    }

    #[test]
    fn lie_derivative_is_a_lie_morphism(x in arb_field(5), y in arb_field(5)) {
        let lhs = lie_derivative(&x.bracket(&y), &Weight::Symbolic);
        let rhs = lie_derivative(&x, &Weight::Symbolic)
            .commutator(&lie_derivative(&y, &Weight::Symbolic));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_is_antisymmetric(a in arb_op(), b in arb_op()) {
        let lhs = a.commutator(&b);
        let rhs = b.commutator(&a);
        prop_assert!((&lhs + &rhs).is_zero());
    }

    #[test]
    fn commutator_satisfies_jacobi(a in arb_op(), b in arb_op(), c in arb_op()) {
        let s1 = a.commutator(&b).commutator(&c);
        let s2 = b.commutator(&c).commutator(&a);
        let s3 = c.commutator(&a).commutator(&b);
        prop_assert!((&(&s1 + &s2) + &s3).is_zero());
    }

    #[test]
    fn symmetrized_product_ignores_input_order(
        ops in prop::collection::vec(arb_op(), 1..=4).prop_shuffle()
    ) {
        let sorted: Vec<DiffOp> = {
            let mut v = ops.clone();
            v.sort_by_key(|op| format!("{op}"));
            v
        };
        prop_assert_eq!(
            symmetrized_product(&ops).unwrap(),
            symmetrized_product(&sorted).unwrap()
        );
    }

    #[test]
    fn adjoint_action_preserves_order(i in 0usize..=2, a in arb_op()) {
        let x = PolyField::basis(i);
        let acted = adjoint_action(&x, &a);
        match (a.order(), acted.order()) {
            (Some(n), Some(m)) => prop_assert!(m <= n),
            (None, acted_order) => prop_assert_eq!(acted_order, None),
            (Some(_), None) => {} // dropping to zero is allowed
        }
    }
}
