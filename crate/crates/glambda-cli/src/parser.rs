//! Recursive-descent parser for the expression grammar.
//!
//! Precedence, tightest first: `^` (integer-literal exponents), unary
//! minus, `*`, then `+`/`-`; `*` is left-associative. Rational literals are
//! written `p/q` (the only role of `/`). Whitespace is insignificant.

use std::fmt;

use glambda_core::rings::Rational;
use glambda_core::sl2uea::Generator;
use num::bigint::BigInt;
use num::traits::Zero;

use crate::ast::{BinOp, Expr, Sym};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    UnknownSymbol {
        offset: usize,
        name: String,
    },
    ZeroDenominator {
        offset: usize,
    },
    CallArity {
        offset: usize,
        name: &'static str,
        message: &'static str,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                offset,
                expected,
                found,
            } => {
                write!(f, "syntax error at byte {offset}: expected ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{}", if i + 1 == expected.len() { " or " } else { ", " })?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "; found {found}")
            }
            ParseError::UnknownSymbol { offset, name } => write!(
                f,
                "syntax error at byte {offset}: unknown symbol '{name}' \
                 (expected one of l, x, d, xi, e0, e1, e2, delta, L, sym, com)"
            ),
            ParseError::ZeroDenominator { offset } => {
                write!(f, "syntax error at byte {offset}: rational literal with zero denominator")
            }
            ParseError::CallArity {
                offset,
                name,
                message,
            } => write!(f, "syntax error at byte {offset}: {name}(...) {message}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        if c.is_ascii_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((offset, Tok::Num(digits.parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((offset, Tok::Ident(name)));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    offset,
                    expected: vec!["number", "identifier", "operator", "'('", "')'"],
                    found: format!("'{other}'"),
                })
            }
        };
        chars.next();
        out.push((offset, tok));
    }
    out.push((input.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: Vec<&'static str>) -> ParseError {
        let (offset, tok) = self.peek();
        ParseError::Syntax {
            offset: *offset,
            expected,
            found: tok.describe(),
        }
    }

    fn expect(&mut self, want: Tok, describe: &'static str) -> Result<usize, ParseError> {
        if self.peek().1 == want {
            Ok(self.advance().0)
        } else {
            Err(self.err(vec![describe]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().1 {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek().1 == Tok::Star {
            self.advance();
            let rhs = self.factor()?;
            lhs = Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().1 == Tok::Minus {
            self.advance();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while self.peek().1 == Tok::Caret {
            self.advance();
            let (offset, tok) = self.advance();
            let Tok::Num(n) = tok else {
                return Err(ParseError::Syntax {
                    offset,
                    expected: vec!["nonnegative integer exponent"],
                    found: tok.describe(),
                });
            };
            let exp: usize = n.to_string().parse().map_err(|_| ParseError::Syntax {
                offset,
                expected: vec!["reasonably small exponent"],
                found: format!("number {n}"),
            })?;
            base = Expr::Pow(Box::new(base), exp);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().1.clone() {
            Tok::Num(n) => {
                self.advance();
                if self.peek().1 == Tok::Slash {
                    self.advance();
                    let (offset, tok) = self.advance();
                    let Tok::Num(den) = tok else {
                        return Err(ParseError::Syntax {
                            offset,
                            expected: vec!["integer denominator"],
                            found: tok.describe(),
                        });
                    };
                    if den.is_zero() {
                        return Err(ParseError::ZeroDenominator { offset });
                    }
                    Ok(Expr::Number(Rational::new(n, den)))
                } else {
                    Ok(Expr::Number(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                let (offset, _) = self.advance();
                self.ident(offset, &name)
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.err(vec!["number", "identifier", "'-'", "'('"])),
        }
    }

    fn ident(&mut self, offset: usize, name: &str) -> Result<Expr, ParseError> {
        let sym = match name {
            "l" => Some(Sym::Lambda),
            "x" => Some(Sym::X),
            "d" => Some(Sym::D),
            "xi" => Some(Sym::Xi),
            "e0" => Some(Sym::Gen(Generator::E0)),
            "e1" => Some(Sym::Gen(Generator::E1)),
            "e2" => Some(Sym::Gen(Generator::E2)),
            "delta" => Some(Sym::Delta),
            _ => None,
        };
        if let Some(sym) = sym {
            return Ok(Expr::Symbol(sym));
        }
        match name {
            "L" | "sym" | "com" => {
                self.expect(Tok::LParen, "'('")?;
                let mut args = vec![self.expr()?];
                while self.peek().1 == Tok::Comma {
                    self.advance();
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen, "')'")?;
                match name {
                    "L" => {
                        if args.len() != 1 {
                            return Err(ParseError::CallArity {
                                offset,
                                name: "L",
                                message: "takes exactly one field argument",
                            });
                        }
                        Ok(Expr::Lie(Box::new(args.remove(0))))
                    }
                    "com" => {
                        if args.len() != 2 {
                            return Err(ParseError::CallArity {
                                offset,
                                name: "com",
                                message: "takes exactly two arguments",
                            });
                        }
                        let b = args.pop().expect("two args");
                        let a = args.pop().expect("two args");
                        Ok(Expr::Com(Box::new(a), Box::new(b)))
                    }
                    _ => Ok(Expr::SymCall(args)),
                }
            }
            _ => Err(ParseError::UnknownSymbol {
                offset,
                name: name.to_string(),
            }),
        }
    }
}

/// Parses an expression; the whole input must be consumed.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.peek().1 != Tok::Eof {
        return Err(p.err(vec!["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}
