//! Batch CLI for the density-operator symbol calculus.

use std::process::ExitCode;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};
use num::traits::Zero;

use glambda_core::closedform::{ak_operator, pnk_polynomial, verify_theorem};
use glambda_core::densityops::{DiffOp, PolyField};
use glambda_core::json;
use glambda_core::rings::{binomial, rat_int, LambdaPoly, Rational};
use glambda_core::sl2uea::{casimir_ideal_generator, gl_bracket_image, Generator, UeaElement};
use glambda_core::symbolmap::{
    alpha_coefficient, quantize_with_convention, sigma_with_convention,
    solve_equivariant_symbol_maps, solve_invariant_operators, SignConvention, SymbolPoly,
};

use glambda_cli::elab::{self, elaborate, to_field, Universe, Value};
use glambda_cli::{ast, parser, render};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Corrected,
    Printed,
}

impl From<Convention> for SignConvention {
    fn from(c: Convention) -> SignConvention {
        match c {
            Convention::Corrected => SignConvention::Corrected,
            Convention::Printed => SignConvention::Printed,
        }
    }
}

/// Exact symbol calculus for differential operators on tensor densities.
#[derive(ClapParser)]
#[command(name = "glambda", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Sign convention for the symbol-map coefficients.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Corrected)]
    convention: Convention,
    /// Optional numeric specialization of the density degree, e.g. `1/2`.
    #[arg(long, global = true, value_name = "RATIONAL")]
    lambda: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equivariant symbol of an operator (or of the image of an
    /// enveloping-algebra expression).
    Symbol { expr: String },
    /// Operator with the given symbol (`xi` is the fiber variable).
    Quantize { expr: String },
    /// Image of an enveloping-algebra expression under the evaluation map.
    Embed { expr: String },
    /// Commutator of the images of two enveloping-algebra expressions.
    Bracket { a: String, b: String },
    /// Coefficient polynomial P^n_k.
    Pnk { n: usize, k: usize },
    /// Invariant operator A_k evaluated on vector fields.
    Ak {
        k: usize,
        #[arg(required = true)]
        fields: Vec<String>,
    },
    /// Run the self-verification suite and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

enum CliError {
    /// Parse/type/domain diagnostics: exit 1.
    Diagnostic(String),
    /// Violated internal invariants: exit 2.
    Invariant {
        output: Option<String>,
        message: String,
    },
}

impl From<parser::ParseError> for CliError {
    fn from(e: parser::ParseError) -> CliError {
        CliError::Diagnostic(e.to_string())
    }
}

impl From<elab::TypeError> for CliError {
    fn from(e: elab::TypeError) -> CliError {
        CliError::Diagnostic(e.to_string())
    }
}

impl From<glambda_core::Error> for CliError {
    fn from(e: glambda_core::Error) -> CliError {
        CliError::Diagnostic(e.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Diagnostic(format!("malformed rational {s:?}"));
    let parse_int = |t: &str| t.parse::<num::BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(CliError::Diagnostic(format!(
                    "rational {s:?} has zero denominator"
                )));
            }
            Ok(Rational::new(num, den))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Diagnostic(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Invariant { output, message }) => {
            if let Some(o) = output {
                println!("{o}");
            }
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let conv: SignConvention = cli.convention.into();
    let lambda = cli.lambda.as_deref().map(parse_rational).transpose()?;
    let specialize = |v: Value| -> Value {
        match &lambda {
            Some(l) => v.specialize(l),
            None => v,
        }
    };
    let emit = |v: Value| -> String {
        match (v, cli.format) {
            (Value::Operator(op), Format::Json) => json::diffop_to_json(&op),
            (Value::Operator(op), Format::Latex) => render::latex_diffop(&op),
            (Value::Symbol(s), Format::Json) => json::symbol_to_json(&s),
            (Value::Symbol(s), Format::Latex) => render::latex_symbol(&s),
            (Value::Uea(u), Format::Json) => json::uea_to_json(&u),
            (Value::Uea(u), Format::Latex) => render::latex_uea(&u),
        }
    };

    match cli.command {
        Command::Symbol { expr } => {
            let ast = parser::parse(&expr)?;
            let op = match elaborate(&ast, Universe::Operator)? {
                Value::Operator(op) => op,
                Value::Uea(u) => u.embed(),
                Value::Symbol(_) => {
                    return Err(CliError::Diagnostic(
                        "symbol expects an operator or enveloping-algebra expression, \
                         got a symbol expression"
                            .to_string(),
                    ))
                }
            };
            let s = sigma_with_convention(&op, conv);
            Ok(emit(specialize(Value::Symbol(s))))
        }
        Command::Quantize { expr } => {
            let ast = parser::parse(&expr)?;
            let s = match elaborate(&ast, Universe::Symbol)? {
                Value::Symbol(s) => s,
                other => {
                    return Err(CliError::Diagnostic(format!(
                        "quantize expects a symbol expression, got an {} expression",
                        match other {
                            Value::Operator(_) => "operator",
                            _ => "enveloping-algebra",
                        }
                    )))
                }
            };
            let op = quantize_with_convention(&s, conv);
            Ok(emit(specialize(Value::Operator(op))))
        }
        Command::Embed { expr } => {
            let ast = parser::parse(&expr)?;
            let u = expect_uea(&ast, "embed")?;
            Ok(emit(specialize(Value::Operator(u.embed()))))
        }
        Command::Bracket { a, b } => {
            let ua = expect_uea(&parser::parse(&a)?, "bracket")?;
            let ub = expect_uea(&parser::parse(&b)?, "bracket")?;
            let op = gl_bracket_image(&ua, &ub);
            Ok(emit(specialize(Value::Operator(op))))
        }
        Command::Pnk { n, k } => {
            let p = pnk_polynomial(n, k, conv)?;
            let p = match &lambda {
                Some(l) => LambdaPoly::constant(p.eval(l)),
                None => p,
            };
            Ok(match cli.format {
                Format::Json => json::lambda_poly_to_json(&p),
                Format::Latex => render::latex_lambda_poly(&p),
            })
        }
        Command::Ak { k, fields } => {
            let mut parsed: Vec<PolyField> = Vec::with_capacity(fields.len());
            for f in &fields {
                let ast = parser::parse(f)?;
                let Value::Operator(op) = elaborate(&ast, Universe::Operator)? else {
                    return Err(CliError::Diagnostic(format!(
                        "ak expects vector fields of the form X(x)*d, got {f:?}"
                    )));
                };
                let field = to_field(&op)?;
                if !field.is_sl2() {
                    return Err(CliError::Diagnostic(format!(
                        "field {f:?} has degree > 2; ak is defined on sl2 fields"
                    )));
                }
                parsed.push(field);
            }
            let v = ak_operator(k, &parsed)?;
            let s = SymbolPoly::from_xpoly(0, &v);
            Ok(emit(specialize(Value::Symbol(s))))
        }
        Command::Verify { n_max } => verify(n_max),
    }
}

fn expect_uea(ast: &ast::Expr, cmd: &str) -> Result<UeaElement, CliError> {
    match elaborate(ast, Universe::Uea)? {
        Value::Uea(u) => Ok(u),
        other => Err(CliError::Diagnostic(format!(
            "{cmd} expects an enveloping-algebra expression, got {} expression",
            match other {
                Value::Operator(_) => "an operator",
                _ => "a symbol",
            }
        ))),
    }
}

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

/// Runs the oracle suite and reports one line per check.
fn verify(n_max: usize) -> Result<String, CliError> {
    let mut lines: Vec<(String, bool)> = Vec::new();

    for n in 1..=n_max {
        let tuples = basis_tuples(n);
        let ok = tuples
            .iter()
            .all(|t| verify_theorem(t).expect("nonempty tuple"));
        lines.push((
            format!("theorem identity n={n} ({} tuples)", tuples.len()),
            ok,
        ));
    }

    {
        let casimir_ok = glambda_core::sl2uea::casimir().embed()
            == DiffOp::scalar(LambdaPoly::from_ints(&[0, -1, 1]));
        let gen = casimir_ideal_generator();
        let mut ideal_ok = gen.kernel_test();
        for g in Generator::ALL {
            let e = UeaElement::generator(g);
            ideal_ok &= (&gen * &e).kernel_test() && (&e * &gen).kernel_test();
            ideal_ok &= !e.kernel_test();
        }
        lines.push((
            "casimir image and kernel ideal".to_string(),
            casimir_ok && ideal_ok,
        ));
    }

    {
        let ok = (1..=8).all(|n| {
            pnk_polynomial(n, 0, SignConvention::Corrected)
                .map(|p| p.is_one())
                .unwrap_or(false)
        });
        lines.push(("principal normalization P^n_0 = 1 (n <= 8)".to_string(), ok));
    }

    for n in 1..=n_max.min(3) {
        let ok = match solve_equivariant_symbol_maps(n, true) {
            Ok(sol) if sol.dimension == 0 && sol.tables.len() == 1 => {
                let table = &sol.tables[0];
                let mut agree = true;
                for p in 0..=n {
                    for j in p..=n {
                        agree &= table.get(p, j)
                            == alpha_coefficient(p, j, SignConvention::Corrected).expect("p <= j");
                    }
                }
                let free = solve_equivariant_symbol_maps(n, false).expect("solver");
                agree && free.dimension == n + 1
            }
            _ => false,
        };
        lines.push((format!("symbol-map solver n={n}"), ok));
    }

    for n in 1..=n_max.min(4) {
        let mut ok = true;
        for mu in -(n as i64)..=(n as i64) {
            let k = (mu + n as i64) as usize;
            let sol = solve_invariant_operators(n, mu);
            let expected = if k.is_multiple_of(2) && k <= n { 1 } else { 0 };
            ok &= sol.dimension == expected;
            if sol.dimension == 1 && k.is_multiple_of(2) && k <= n {
                let op = sol.basis[0].normalized();
                for p in 0..=(k / 2) {
                    let want =
                        rat_int(-2).pow(p as i32) * Rational::from_integer(binomial(k / 2, p));
                    ok &= op.beta(p) == want;
                }
            }
        }
        lines.push((format!("invariant operators n={n}"), ok));
    }

    let all_ok = lines.iter().all(|(_, ok)| *ok);
    let width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (label, ok) in &lines {
        out.push_str(&format!(
            "{label:<width$}  {}\n",
            if *ok { "pass" } else { "FAIL" }
        ));
    }
    out.push_str(&format!(
        "{} checks, {} failed",
        lines.len(),
        lines.iter().filter(|(_, ok)| !ok).count()
    ));
    if all_ok {
        Ok(out)
    } else {
        Err(CliError::Invariant {
            output: Some(out),
            message: "verification failed".to_string(),
        })
    }
}
