//! Exact symbol calculus for differential operators on tensor densities of
//! degree λ on the real line.
//!
//! Everything is computed over ℚ with λ kept as a formal indeterminate, so
//! identities between operators, symbols and enveloping-algebra elements are
//! decided exactly.
//!
//! The main layers, bottom up:
//!
//! * [`rings`] — big rationals, the polynomial ring ℚ\[λ\], Stirling numbers
//!   and generalized binomial coefficients.
//! * [`densityops`] — the associative algebra of differential operators
//!   `Σ c(λ)·x^m·∂^n` acting on polynomial densities, Lie derivatives
//!   `L_X = X∂ + λX′`, and symmetrized products.
//! * [`symbolmap`] — the projectively equivariant symbol map σ_λ, its inverse
//!   quantization, the sl2 action on symbols, and first-principles linear
//!   solvers that re-derive the map and classify invariant operators.
//! * [`sl2uea`] — the universal enveloping algebra U(sl2) with PBW
//!   normalization, the Casimir element, and the evaluation homomorphism
//!   into differential operators (whose kernel realizes gl(λ)).
//! * [`closedform`] — the closed-form symbol of symmetrized products: the
//!   invariant multilinear operators A_k and the polynomials P^n_k.
//! * [`json`] — canonical JSON serialization for all value types.

pub mod closedform;
pub mod densityops;
pub mod error;
pub mod json;
pub(crate) mod linalg;
pub mod rings;
pub mod sl2uea;
pub mod symbolmap;

pub use error::Error;
pub use rings::{LambdaPoly, Rational};
