//! Elaboration: universe inference and evaluation of parsed expressions.
//!
//! Every expression lives in exactly one of three universes — differential
//! operators, enveloping-algebra elements, or symbols. Scalars (`l`,
//! rational literals) fit any universe and `x` fits both the operator and
//! symbol universes; everything else is pinned by its atoms, and mixing
//! universes is a type error.

use std::fmt;

use glambda_core::densityops::{lie_derivative, symmetrized_product, DiffOp, PolyField, Weight};
use glambda_core::rings::{LambdaPoly, Rational};
use glambda_core::sl2uea::{casimir, UeaElement};
use glambda_core::symbolmap::SymbolPoly;

use crate::ast::{BinOp, Expr, Sym};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError(pub String);

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type error: {}", self.0)
    }
}

impl std::error::Error for TypeError {}

/// A resolved universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Universe {
    Operator,
    Uea,
    Symbol,
}

impl Universe {
    fn name(self) -> &'static str {
        match self {
            Universe::Operator => "operator",
            Universe::Uea => "enveloping-algebra",
            Universe::Symbol => "symbol",
        }
    }
}

/// Inferred universe, before context resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Inferred {
    /// Scalars only: fits every universe.
    Neutral,
    /// Contains `x` but nothing decisive: operator or symbol.
    XLike,
    Operator,
    Uea,
    Symbol,
}

fn join(a: Inferred, b: Inferred) -> Result<Inferred, TypeError> {
    use Inferred::*;
    Ok(match (a, b) {
        (Neutral, u) | (u, Neutral) => u,
        (XLike, XLike) => XLike,
        (XLike, Operator) | (Operator, XLike) | (Operator, Operator) => Operator,
        (XLike, Symbol) | (Symbol, XLike) | (Symbol, Symbol) => Symbol,
        (Uea, Uea) => Uea,
        (Uea, other) | (other, Uea) => {
            return Err(TypeError(format!(
                "cannot mix enveloping-algebra symbols with {} symbols in one expression",
                match other {
                    Symbol => "symbol",
                    _ => "operator",
                }
            )))
        }
        (Operator, Symbol) | (Symbol, Operator) => {
            return Err(TypeError(
                "cannot mix operator symbols (d) with symbol symbols (xi) in one expression"
                    .to_string(),
            ))
        }
    })
}

fn infer(expr: &Expr) -> Result<Inferred, TypeError> {
    Ok(match expr {
        Expr::Number(_) => Inferred::Neutral,
        Expr::Symbol(Sym::Lambda) => Inferred::Neutral,
        Expr::Symbol(Sym::X) => Inferred::XLike,
        Expr::Symbol(Sym::D) => Inferred::Operator,
        Expr::Symbol(Sym::Xi) => Inferred::Symbol,
        Expr::Symbol(Sym::Gen(_)) | Expr::Symbol(Sym::Delta) => Inferred::Uea,
        Expr::Neg(e) | Expr::Pow(e, _) => infer(e)?,
        Expr::Bin(_, a, b) => join(infer(a)?, infer(b)?)?,
        Expr::Lie(arg) => {
            let inner = join(infer(arg)?, Inferred::Operator).map_err(|_| {
                TypeError("the argument of L(...) must be a vector field X(x)*d".to_string())
            })?;
            debug_assert_eq!(inner, Inferred::Operator);
            Inferred::Operator
        }
        Expr::SymCall(args) => {
            let mut u = Inferred::Neutral;
            for a in args {
                u = join(u, infer(a)?)?;
            }
            u
        }
        Expr::Com(a, b) => join(infer(a)?, infer(b)?)?,
    })
}

/// An elaborated value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Operator(DiffOp),
    Uea(UeaElement),
    Symbol(SymbolPoly),
}

impl Value {
    fn unit(u: Universe) -> Value {
        match u {
            Universe::Operator => Value::Operator(DiffOp::identity()),
            Universe::Uea => Value::Uea(UeaElement::one()),
            Universe::Symbol => Value::Symbol(SymbolPoly::one()),
        }
    }

    fn scalar(u: Universe, c: LambdaPoly) -> Value {
        match u {
            Universe::Operator => Value::Operator(DiffOp::scalar(c)),
            Universe::Uea => Value::Uea(UeaElement::scalar(c)),
            Universe::Symbol => Value::Symbol(SymbolPoly::scalar(c)),
        }
    }

    fn add(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Operator(a), Value::Operator(b)) => Value::Operator(a + b),
            (Value::Uea(a), Value::Uea(b)) => Value::Uea(a + b),
            (Value::Symbol(a), Value::Symbol(b)) => Value::Symbol(a + b),
            _ => unreachable!("inference guarantees matching universes"),
        }
    }

    fn sub(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Operator(a), Value::Operator(b)) => Value::Operator(a - b),
            (Value::Uea(a), Value::Uea(b)) => Value::Uea(a - b),
            (Value::Symbol(a), Value::Symbol(b)) => Value::Symbol(a - b),
            _ => unreachable!("inference guarantees matching universes"),
        }
    }

    fn mul(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Operator(a), Value::Operator(b)) => Value::Operator(a.compose(b)),
            (Value::Uea(a), Value::Uea(b)) => Value::Uea(a * b),
            (Value::Symbol(a), Value::Symbol(b)) => Value::Symbol(a * b),
            _ => unreachable!("inference guarantees matching universes"),
        }
    }

    fn neg(&self) -> Value {
        match self {
            Value::Operator(a) => Value::Operator(-a),
            Value::Uea(a) => Value::Uea(-a),
            Value::Symbol(a) => Value::Symbol(-a),
        }
    }

    /// Substitutes λ = `v` into every coefficient.
    pub fn specialize(&self, v: &Rational) -> Value {
        let eval = |c: &LambdaPoly| LambdaPoly::constant(c.eval(v));
        match self {
            Value::Operator(a) => {
                let mut out = DiffOp::zero();
                for ((x, d), c) in a.terms() {
                    out = &out + &DiffOp::term(x, d, eval(c));
                }
                Value::Operator(out)
            }
            Value::Uea(a) => {
                let mut out = UeaElement::zero();
                for (w, c) in a.terms() {
                    out.add_word(w.clone(), eval(c));
                }
                Value::Uea(out)
            }
            Value::Symbol(a) => {
                let mut out = SymbolPoly::zero();
                for ((x, xi), c) in a.terms() {
                    out = &out + &SymbolPoly::term(x, xi, eval(c));
                }
                Value::Symbol(out)
            }
        }
    }
}

/// Interprets an operator as a vector field `X(x)∂`: every term must have
/// ∂-power exactly 1 with a λ-free coefficient.
pub fn to_field(op: &DiffOp) -> Result<PolyField, TypeError> {
    let mut coeffs: Vec<Rational> = Vec::new();
    for ((x, d), c) in op.terms() {
        if d != 1 {
            return Err(TypeError(
                "expected a vector field of the form X(x)*d".to_string(),
            ));
        }
        if c.degree().is_some_and(|deg| deg > 0) {
            return Err(TypeError(
                "vector field coefficients must not involve l".to_string(),
            ));
        }
        if coeffs.len() <= x {
            coeffs.resize(x + 1, Rational::new(0.into(), 1.into()));
        }
        coeffs[x] = c.coeff(0);
    }
    Ok(PolyField::new(coeffs))
}

fn eval(expr: &Expr, u: Universe) -> Result<Value, TypeError> {
    Ok(match expr {
        Expr::Number(r) => Value::scalar(u, LambdaPoly::constant(r.clone())),
        Expr::Symbol(Sym::Lambda) => Value::scalar(u, LambdaPoly::lambda()),
        Expr::Symbol(Sym::X) => match u {
            Universe::Operator => Value::Operator(DiffOp::term(1, 0, LambdaPoly::one())),
            Universe::Symbol => Value::Symbol(SymbolPoly::term(1, 0, LambdaPoly::one())),
            Universe::Uea => {
                return Err(TypeError(
                    "x is not an enveloping-algebra symbol".to_string(),
                ))
            }
        },
        Expr::Symbol(Sym::D) => match u {
            Universe::Operator => Value::Operator(DiffOp::term(0, 1, LambdaPoly::one())),
            _ => return Err(TypeError(format!("d is not a {} symbol", u.name()))),
        },
        Expr::Symbol(Sym::Xi) => match u {
            Universe::Symbol => Value::Symbol(SymbolPoly::term(0, 1, LambdaPoly::one())),
            _ => return Err(TypeError(format!("xi is not an {} symbol", u.name()))),
        },
        Expr::Symbol(Sym::Gen(g)) => match u {
            Universe::Uea => Value::Uea(UeaElement::generator(*g)),
            _ => return Err(TypeError(format!("e{} is not an {} symbol", g.index(), u.name()))),
        },
        Expr::Symbol(Sym::Delta) => match u {
            Universe::Uea => Value::Uea(casimir()),
            _ => return Err(TypeError(format!("delta is not an {} symbol", u.name()))),
        },
        Expr::Neg(e) => eval(e, u)?.neg(),
        Expr::Bin(op, a, b) => {
            let a = eval(a, u)?;
            let b = eval(b, u)?;
            match op {
                BinOp::Add => a.add(&b),
                BinOp::Sub => a.sub(&b),
                BinOp::Mul => a.mul(&b),
            }
        }
        Expr::Pow(base, exp) => {
            let base = eval(base, u)?;
            let mut acc = Value::unit(u);
            for _ in 0..*exp {
                acc = acc.mul(&base);
            }
            acc
        }
        Expr::Lie(arg) => {
            if u != Universe::Operator {
                return Err(TypeError(format!(
                    "L(...) is an operator expression, not a {} expression",
                    u.name()
                )));
            }
            let Value::Operator(inner) = eval(arg, Universe::Operator)? else {
                unreachable!()
            };
            let field = to_field(&inner)?;
            Value::Operator(lie_derivative(&field, &Weight::Symbolic))
        }
        Expr::SymCall(args) => {
            let values: Result<Vec<Value>, TypeError> =
                args.iter().map(|a| eval(a, u)).collect();
            let values = values?;
            symmetrize_values(u, &values)
        }
        Expr::Com(a, b) => {
            let a = eval(a, u)?;
            let b = eval(b, u)?;
            a.mul(&b).sub(&b.mul(&a))
        }
    })
}

/// `Σ_τ v_{τ(1)}⋯v_{τ(n)}` over all orderings.
fn symmetrize_values(u: Universe, values: &[Value]) -> Value {
    if let Universe::Operator = u {
        let ops: Vec<DiffOp> = values
            .iter()
            .map(|v| match v {
                Value::Operator(op) => op.clone(),
                _ => unreachable!(),
            })
            .collect();
        return Value::Operator(symmetrized_product(&ops).expect("parser rejects empty sym()"));
    }
    let mut total: Option<Value> = None;
    permutations(values.len(), &mut |perm| {
        let mut prod = Value::unit(u);
        for &i in perm {
            prod = prod.mul(&values[i]);
        }
        total = Some(match &total {
            None => prod,
            Some(t) => t.add(&prod),
        });
    });
    total.expect("parser rejects empty sym()")
}

fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..n).collect();
    heap(&mut idx, n, f);
    fn heap(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(idx);
            return;
        }
        for i in 0..k {
            heap(idx, k - 1, f);
            if k.is_multiple_of(2) {
                idx.swap(i, k - 1);
            } else {
                idx.swap(0, k - 1);
            }
        }
    }
}

/// Elaborates an expression: infers its universe (falling back to `default`
/// for scalar- and x-only expressions) and evaluates it there.
pub fn elaborate(expr: &Expr, default: Universe) -> Result<Value, TypeError> {
    let u = match infer(expr)? {
        Inferred::Neutral | Inferred::XLike => default,
        Inferred::Operator => Universe::Operator,
        Inferred::Uea => Universe::Uea,
        Inferred::Symbol => Universe::Symbol,
    };
    eval(expr, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use glambda_core::rings::rat_int;

    fn elab_op(s: &str) -> DiffOp {
        match elaborate(&parse(s).unwrap(), Universe::Operator).unwrap() {
            Value::Operator(op) => op,
            other => panic!("expected operator, got {other:?}"),
        }
    }

    #[test]
    fn operator_examples() {
        // x²∂ + 2λx
        let op = elab_op("x^2*d + 2*l*x");
        let expected = &DiffOp::term(2, 1, LambdaPoly::one())
            + &DiffOp::term(1, 0, LambdaPoly::monomial(rat_int(2), 1));
        assert_eq!(op, expected);
        // L(x^2*d) gives the same operator via the Lie derivative
        assert_eq!(elab_op("L(x^2*d)"), expected);
    }

    #[test]
    fn uea_examples() {
        let v = elaborate(&parse("delta - l*(l-1)").unwrap(), Universe::Operator).unwrap();
        let Value::Uea(u) = v else { panic!("expected uea") };
        assert!(u.kernel_test());
        let v = elaborate(&parse("sym(e1,e1)").unwrap(), Universe::Operator).unwrap();
        let Value::Uea(u) = v else { panic!("expected uea") };
        assert_eq!(
            u,
            glambda_core::sl2uea::symmetrize_word(&[
                glambda_core::sl2uea::Generator::E1,
                glambda_core::sl2uea::Generator::E1
            ])
            .unwrap()
        );
        let v = elaborate(&parse("com(e0,e2)").unwrap(), Universe::Operator).unwrap();
        let Value::Uea(u) = v else { panic!("expected uea") };
        // embeds to 2·embed(e1)
        assert_eq!(
            u.embed(),
            glambda_core::sl2uea::UeaElement::generator(glambda_core::sl2uea::Generator::E1)
                .embed()
                .scale(&LambdaPoly::constant_int(2))
        );
    }

    #[test]
    fn mixing_universes_is_a_type_error() {
        assert!(elaborate(&parse("e0 + x").unwrap(), Universe::Operator).is_err());
        assert!(elaborate(&parse("xi + d").unwrap(), Universe::Operator).is_err());
        assert!(elaborate(&parse("delta * x").unwrap(), Universe::Operator).is_err());
    }

    #[test]
    fn symbol_default_universe() {
        let v = elaborate(&parse("x^2").unwrap(), Universe::Symbol).unwrap();
        assert_eq!(
            v,
            Value::Symbol(SymbolPoly::term(2, 0, LambdaPoly::one()))
        );
        let v = elaborate(&parse("x*xi + l").unwrap(), Universe::Operator).unwrap();
        let Value::Symbol(s) = v else { panic!("xi forces the symbol universe") };
        assert_eq!(
            s,
            &SymbolPoly::term(1, 1, LambdaPoly::one()) + &SymbolPoly::scalar(LambdaPoly::lambda())
        );
    }

    #[test]
    fn lie_argument_validation() {
        assert!(elaborate(&parse("L(x)").unwrap(), Universe::Operator).is_err());
        assert!(elaborate(&parse("L(d^2)").unwrap(), Universe::Operator).is_err());
        assert!(elaborate(&parse("L(l*d)").unwrap(), Universe::Operator).is_err());
        assert!(elaborate(&parse("L(e1)").unwrap(), Universe::Operator).is_err());
    }

    #[test]
    fn symmetrization_in_each_universe() {
        // operators: sym(d, x*d) = d∘x∂ + x∂∘d
        let v = elab_op("sym(d, x*d)");
        let d = DiffOp::term(0, 1, LambdaPoly::one());
        let xd = DiffOp::term(1, 1, LambdaPoly::one());
        assert_eq!(v, &d.compose(&xd) + &xd.compose(&d));
        // symbols: sym(xi, xi) = 2ξ²
        let v = elaborate(&parse("sym(xi, xi)").unwrap(), Universe::Operator).unwrap();
        assert_eq!(
            v,
            Value::Symbol(SymbolPoly::term(0, 2, LambdaPoly::constant_int(2)))
        );
    }

    #[test]
    fn specialization() {
        let v = elab_op("L(x^2*d)");
        let spec = Value::Operator(v).specialize(&rat_int(3));
        let expected = &DiffOp::term(2, 1, LambdaPoly::one())
            + &DiffOp::term(1, 0, LambdaPoly::constant_int(6));
        assert_eq!(spec, Value::Operator(expected));
    }
}
