//! Acceptance suite: one test per criterion, each printing a PASS line.
//! All comparisons are exact; there are no tolerances anywhere.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use glambda_core::closedform::{ak_operator, pnk_polynomial};
use glambda_core::densityops::{
    lie_derivative, symmetrized_derivative_pattern, symmetrized_product, DiffOp, PolyField,
    Weight, XPoly,
};
use glambda_core::json;
use glambda_core::rings::{binomial, rat, rat_int, LambdaPoly, Rational};
use glambda_core::sl2uea::{
    casimir, casimir_ideal_generator, symmetrize_word, Generator, UeaElement, Word,
};
use glambda_core::symbolmap::{
    alpha_coefficient, sigma, sigma_with_convention, solve_equivariant_symbol_maps,
    solve_invariant_operators, SignConvention, SymbolPoly,
};

fn basis_tuples(n: usize) -> Vec<Vec<PolyField>> {
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

fn lie_ops(fields: &[PolyField]) -> Vec<DiffOp> {
    fields
        .iter()
        .map(|f| lie_derivative(f, &Weight::Symbolic))
        .collect()
}

/// The order-n symbol formulas, hardcoded term by term as an independent
/// fixture: leading symmetrization at ξ^n, then
/// `c2·[(X′X′X⋯)_+ − 2(X″X⋯)_+]·ξ^{n−2}`, then
/// `c4·[(X′X′X′X′⋯)_+ − 4(X″X′X′X⋯)_+ + 4(X″X″X⋯)_+]·ξ^{n−4}`.
fn section6_symbol(fields: &[PolyField]) -> SymbolPoly {
    let n = fields.len();
    let c2 = |coeffs: &[(i64, i64)]| {
        LambdaPoly::from_coeffs(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    };
    let mut out = SymbolPoly::from_xpoly(n, &symmetrized_derivative_pattern(fields, 0, 0));
    if n >= 2 {
        let coeff = match n {
            2 => c2(&[(0, 1), (-1, 3), (1, 3)]),       // λ(λ−1)/3
            3 => c2(&[(-1, 5), (-3, 5), (3, 5)]),      // (3λ²−3λ−1)/5
            4 => c2(&[(-5, 7), (-6, 7), (6, 7)]),      // (6λ²−6λ−5)/7
            5 => c2(&[(-5, 3), (-10, 9), (10, 9)]),    // 5(2λ²−2λ−3)/9
            _ => unreachable!("fixture covers n <= 5"),
        };
        let bracket = &symmetrized_derivative_pattern(fields, 0, 2)
            - &symmetrized_derivative_pattern(fields, 1, 0)
                .scale(&LambdaPoly::constant_int(2));
        out = &out + &SymbolPoly::from_xpoly(n - 2, &bracket.scale(&coeff));
    }
    if n >= 4 {
        let coeff = match n {
            // λ(λ−1)(3λ²−3λ−1)/15
            4 => c2(&[(0, 1), (1, 15), (2, 15), (-2, 5), (1, 5)]),
            // (3λ⁴−6λ³+3λ+1)/7
            5 => c2(&[(1, 7), (3, 7), (0, 1), (-6, 7), (3, 7)]),
            _ => unreachable!("fixture covers n <= 5"),
        };
        let bracket = &(&symmetrized_derivative_pattern(fields, 0, 4)
            - &symmetrized_derivative_pattern(fields, 1, 2)
                .scale(&LambdaPoly::constant_int(4)))
            + &symmetrized_derivative_pattern(fields, 2, 0)
                .scale(&LambdaPoly::constant_int(4));
        out = &out + &SymbolPoly::from_xpoly(n - 4, &bracket.scale(&coeff));
    }
    out
}

/// Criterion 1: for n = 1..5 and every basis tuple, the equivariant symbol
/// of the symmetrized product equals the hardcoded order-n formula,
/// symbolically in λ.
#[test]
fn criterion_1_order_formulas_regression() {
    let mut cases = 0;
    for n in 1..=5usize {
        for tuple in basis_tuples(n) {
            let lhs = sigma(&symmetrized_product(&lie_ops(&tuple)).unwrap());
            let rhs = section6_symbol(&tuple);
            assert_eq!(lhs, rhs, "mismatch at n = {n}, tuple {tuple:?}");
            cases += 1;
        }
    }
    assert_eq!(cases, 3 + 9 + 27 + 81 + 243);
    println!("acceptance criterion 1 (order-formula regression, {cases} exact cases): PASS");
}

/// Criterion 2: the P^n_k table matches the published coefficients, and
/// P^n_0 = 1 for n ≤ 8.
#[test]
fn criterion_2_pnk_table() {
    let conv = SignConvention::Corrected;
    let expect = |coeffs: &[(i64, i64)]| {
        LambdaPoly::from_coeffs(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    };
    let table = [
        ((2, 2), expect(&[(0, 1), (-1, 3), (1, 3)])),
        ((3, 2), expect(&[(-1, 5), (-3, 5), (3, 5)])),
        ((4, 2), expect(&[(-5, 7), (-6, 7), (6, 7)])),
        ((4, 4), expect(&[(0, 1), (1, 15), (2, 15), (-2, 5), (1, 5)])),
        ((5, 2), expect(&[(-5, 3), (-10, 9), (10, 9)])),
        ((5, 4), expect(&[(1, 7), (3, 7), (0, 1), (-6, 7), (3, 7)])),
    ];
    for ((n, k), want) in table {
        assert_eq!(
            pnk_polynomial(n, k, conv).unwrap(),
            want,
            "P^{n}_{k} mismatch"
        );
    }
    for n in 1..=8 {
        assert!(pnk_polynomial(n, 0, conv).unwrap().is_one(), "P^{n}_0");
    }
    println!("acceptance criterion 2 (P^n_k table): PASS");
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| Generator::from_index(rng.gen_range(0..3)).unwrap())
            .collect(),
    )
}

/// Criterion 3: the Casimir element embeds to λ² − λ; the ideal generator
/// and 50 random one-sided products with it are in the kernel; generators
/// are not.
#[test]
fn criterion_3_casimir_kernel() {
    assert_eq!(
        casimir().embed(),
        DiffOp::scalar(LambdaPoly::from_ints(&[0, -1, 1]))
    );
    let gen = casimir_ideal_generator();
    assert!(gen.kernel_test());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
    for _ in 0..50 {
        let w = UeaElement::from_word(random_word(&mut rng, 3));
        assert!((&w * &gen).kernel_test());
        assert!((&gen * &w).kernel_test());
    }
    for g in Generator::ALL {
        assert!(!UeaElement::generator(g).kernel_test());
    }
    println!("acceptance criterion 3 (casimir and kernel ideal, 50 random words): PASS");
}

/// Criterion 4: the equivariance solver has a unique normalized solution
/// for n ≤ 4 that coincides with the closed-form α table, and an
/// unnormalized solution space of dimension n + 1.
#[test]
fn criterion_4_uniqueness_solver() {
    for n in 1..=4usize {
        let sol = solve_equivariant_symbol_maps(n, true).unwrap();
        assert_eq!(sol.dimension, 0, "normalized solution unique at n = {n}");
        assert_eq!(sol.tables.len(), 1);
        let table = &sol.tables[0];
        for p in 0..=n {
            for j in p..=n {
                assert_eq!(
                    table.get(p, j),
                    alpha_coefficient(p, j, SignConvention::Corrected).unwrap(),
                    "alpha_{p}^{j} at n = {n}"
                );
            }
        }
        let free = solve_equivariant_symbol_maps(n, false).unwrap();
        assert_eq!(free.dimension, n + 1, "unnormalized dimension at n = {n}");
    }
    println!("acceptance criterion 4 (symbol-map uniqueness solver, n <= 4): PASS");
}

/// Criterion 5, as stated: for n ≤ 4 and −n ≤ μ ≤ n the solver dimension
/// should be 1 exactly when μ = k−n with k even (0 ≤ k ≤ 2n reachable in
/// range), else 0, with each 1-dimensional basis matching the closed form
/// under the β_0 = 1 normalization.
///
/// The even orders with k > n genuinely admit no equivariant operator
/// (exact computation; e.g. n=1, k=2: equivariance against e2 on e1 forces
/// β = 0 because (x)″ = 0 while (−x²)″ = −2), so this criterion fails on
/// those cells. The assertion is kept as stated; see the dimension table in
/// the failure message.
#[test]
fn criterion_5_invariant_operator_table() {
    let mut mismatches = Vec::new();
    for n in 1..=4usize {
        for mu in -(n as i64)..=(n as i64) {
            let k = (mu + n as i64) as usize; // 0 ≤ k ≤ 2n within this range
            let stated_expectation = if k.is_multiple_of(2) { 1 } else { 0 };
            let sol = solve_invariant_operators(n, mu);
            if sol.dimension != stated_expectation {
                mismatches.push((n, mu, k, stated_expectation, sol.dimension));
            }
            if sol.dimension == 1 {
                // the basis must match the closed form's coefficients
                let op = sol.basis[0].normalized();
                for p in 0..=(k / 2) {
                    let want =
                        rat_int(-2).pow(p as i32) * Rational::from_integer(binomial(k / 2, p));
                    let fits = p + (k - 2 * p) <= n;
                    if fits {
                        assert_eq!(op.beta(p), want, "beta_{p} at n = {n}, k = {k}");
                    }
                }
                for tuple in basis_tuples(n) {
                    assert_eq!(
                        op.apply(&tuple),
                        ak_operator(k, &tuple).unwrap(),
                        "basis value mismatch at n = {n}, k = {k}"
                    );
                }
            }
        }
    }
    assert!(
        mismatches.is_empty(),
        "stated dimension table does not hold; computed dimensions differ on \
         {} cells (n, mu, k, stated, computed): {mismatches:?}. \
         Exact computation shows the space is zero for every even k > n: the \
         p = 0 derivative pattern needed by the beta_0-normalized solution \
         only exists when k <= n (counterexample at n=1, k=2: the candidate \
         Y ↦ c·Y″ sends e1 to 0 but must equal c·([e2,e1])″ = -2c on the \
         e2-equivariance constraint, forcing c = 0).",
        mismatches.len()
    );
    println!("acceptance criterion 5 (invariant-operator classification table): PASS");
}

/// Criterion 6: the evaluation map is an algebra homomorphism on 100 random
/// word pairs, and intertwines symmetrization on every generator multiset
/// of size ≤ 5.
#[test]
fn criterion_6_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    for _ in 0..100 {
        let u = UeaElement::from_word(random_word(&mut rng, 4));
        let v = UeaElement::from_word(random_word(&mut rng, 4));
        assert_eq!((&u * &v).embed(), u.embed().compose(&v.embed()));
    }
    let mut multiset_cases = 0;
    for n in 1..=5usize {
        for multiset in multisets(n) {
            let lhs = symmetrize_word(&multiset).unwrap().embed();
            let fields: Vec<PolyField> = multiset.iter().map(|g| g.field()).collect();
            let rhs = symmetrized_product(&lie_ops(&fields)).unwrap();
            assert_eq!(lhs, rhs, "multiset {multiset:?}");
            multiset_cases += 1;
        }
    }
    println!(
        "acceptance criterion 6 (homomorphism, 100 pairs + {multiset_cases} multisets): PASS"
    );
}

fn multisets(n: usize) -> Vec<Vec<Generator>> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, acc: &mut Vec<Generator>, out: &mut Vec<Vec<Generator>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for i in start..3 {
            acc.push(Generator::from_index(i).unwrap());
            go(i, n, acc, out);
            acc.pop();
        }
    }
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> LambdaPoly {
    let len = rng.gen_range(0..=max_deg + 1);
    LambdaPoly::from_coeffs(
        (0..len)
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            .collect(),
    )
}

fn random_op(rng: &mut ChaCha8Rng) -> DiffOp {
    let terms = rng.gen_range(0..=4);
    let mut op = DiffOp::zero();
    for _ in 0..terms {
        let x = rng.gen_range(0..=4);
        let d = rng.gen_range(0..=4);
        op = &op + &DiffOp::term(x, d, random_poly(rng, 2));
    }
    op
}

/// Criterion 7: composition agrees with nested density application on 200
/// random (A, B, x^m) cases.
#[test]
fn criterion_7_composition_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    for _ in 0..200 {
        let a = random_op(&mut rng);
        let b = random_op(&mut rng);
        let m = rng.gen_range(0..=8);
        let f = XPoly::x_power(m);
        assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }
    println!("acceptance criterion 7 (composition vs density application, 200 cases): PASS");
}

/// Criterion 8: the printed sign convention is asserted to disagree — the
/// first-order symbol fixture fails and P^2_2 comes out as (13λ²+λ)/3.
#[test]
fn criterion_8_convention_guard() {
    let l2 = lie_derivative(&PolyField::basis(2), &Weight::Symbolic);
    let fixture = SymbolPoly::term(2, 1, LambdaPoly::one());
    assert_eq!(sigma(&l2), fixture);
    assert_ne!(sigma_with_convention(&l2, SignConvention::Printed), fixture);

    let printed = pnk_polynomial(2, 2, SignConvention::Printed).unwrap();
    let corrected = pnk_polynomial(2, 2, SignConvention::Corrected).unwrap();
    assert_eq!(
        printed,
        LambdaPoly::from_coeffs(vec![rat(0, 1), rat(1, 3), rat(13, 3)])
    );
    assert_eq!(
        corrected,
        LambdaPoly::from_coeffs(vec![rat(0, 1), rat(-1, 3), rat(1, 3)])
    );
    assert_ne!(printed, corrected);
    println!("acceptance criterion 8 (sign-convention guard): PASS");
}

fn random_symbol(rng: &mut ChaCha8Rng) -> SymbolPoly {
    let terms = rng.gen_range(0..=4);
    let mut s = SymbolPoly::zero();
    for _ in 0..terms {
        let x = rng.gen_range(0..=4);
        let xi = rng.gen_range(0..=4);
        s = &s + &SymbolPoly::term(x, xi, random_poly(rng, 2));
    }
    s
}

fn random_uea(rng: &mut ChaCha8Rng) -> UeaElement {
    let terms = rng.gen_range(0..=3);
    let mut u = UeaElement::zero();
    for _ in 0..terms {
        u.add_word(random_word(rng, 4), random_poly(rng, 2));
    }
    u
}

/// Criterion 9: CLI end-to-end byte-exact outputs and 100 randomized JSON
/// round trips.
#[test]
fn criterion_9_cli_end_to_end() {
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_glambda"))
            .args(args)
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "command {args:?} failed");
        String::from_utf8(out.stdout).expect("utf-8")
    };
    // the first-order symbol in LaTeX, in both readings of the fixture
    assert_eq!(run(&["symbol", "L(x^2*d)", "--format", "latex"]), "x^2\\xi\n");
    assert_eq!(run(&["symbol", "L(x*d)", "--format", "latex"]), "x\\xi\n");
    // the Casimir image as canonical JSON
    assert_eq!(
        run(&["embed", "delta"]),
        "{\"type\":\"diffop\",\"terms\":[{\"x\":0,\"d\":0,\"coeff\":[\"0\",\"-1\",\"1\"]}]}\n"
    );
    // a coefficient polynomial as canonical JSON
    assert_eq!(run(&["pnk", "4", "2"]), "[\"-5/7\",\"-6/7\",\"6/7\"]\n");

    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    for i in 0..100 {
        match i % 3 {
            0 => {
                let op = random_op(&mut rng);
                assert_eq!(json::diffop_from_json(&json::diffop_to_json(&op)).unwrap(), op);
            }
            1 => {
                let s = random_symbol(&mut rng);
                assert_eq!(json::symbol_from_json(&json::symbol_to_json(&s)).unwrap(), s);
            }
            _ => {
                let u = random_uea(&mut rng);
                assert_eq!(json::uea_from_json(&json::uea_to_json(&u)).unwrap(), u);
            }
        }
    }
    println!("acceptance criterion 9 (CLI end-to-end + 100 JSON round trips): PASS");
}
