//! Expression AST for the command-line grammar.

use glambda_core::rings::Rational;
use glambda_core::sl2uea::Generator;

/// A named atom of the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    /// `l` — the formal density degree λ.
    Lambda,
    /// `x` — multiplication by x (operator universe) or the base coordinate
    /// (symbol universe).
    X,
    /// `d` — the derivative ∂.
    D,
    /// `xi` — the fiber coordinate of T*ℝ.
    Xi,
    /// `e0`, `e1`, `e2` — enveloping-algebra generators.
    Gen(Generator),
    /// `delta` — the Casimir element.
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(Rational),
    Symbol(Sym),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// `base ^ exponent` with a nonnegative integer literal exponent.
    Pow(Box<Expr>, usize),
    /// `L(field)` — the Lie derivative with symbolic weight.
    Lie(Box<Expr>),
    /// `sym(a, b, …)` — symmetrization over all argument orderings.
    SymCall(Vec<Expr>),
    /// `com(a, b)` — the commutator ab − ba.
    Com(Box<Expr>, Box<Expr>),
}
