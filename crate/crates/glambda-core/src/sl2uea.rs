//! The universal enveloping algebra U(sl2) on the generators e0, e1, e2,
//! with PBW normalization, the Casimir element, symmetrization, and the
//! evaluation homomorphism into differential operators.
//!
//! Elements of gl(λ) — the quotient by the ideal (Δ − λ(λ−1)) — are
//! represented by their images under [`embed`](UeaElement::embed), which is
//! faithful on the quotient; [`kernel_test`](UeaElement::kernel_test) is the
//! quotient's equality test.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::densityops::{lie_derivative, DiffOp, PolyField, Weight};
use crate::error::Error;
use crate::rings::{rat, LambdaPoly};
use crate::symbolmap::SymbolPoly;

/// A generator of sl2: `e_i = x^i ∂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    E0,
    E1,
    E2,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E0, Generator::E1, Generator::E2];

    pub fn index(self) -> usize {
        match self {
            Generator::E0 => 0,
            Generator::E1 => 1,
            Generator::E2 => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Generator> {
        match i {
            0 => Some(Generator::E0),
            1 => Some(Generator::E1),
            2 => Some(Generator::E2),
            _ => None,
        }
    }

    /// The vector field `x^i ∂` this generator realizes.
    pub fn field(self) -> PolyField {
        PolyField::basis(self.index())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.index())
    }
}

/// A word over the generators; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(gens: Vec<Generator>) -> Word {
        Word(gens)
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the word is non-decreasing under e0 < e1 < e2.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Parses the concatenated form `"e0e1e2"`; empty input is the unit.
    pub fn parse(s: &str) -> Option<Word> {
        let bytes = s.as_bytes();
        if !bytes.len().is_multiple_of(2) {
            return None;
        }
        let mut gens = Vec::with_capacity(bytes.len() / 2);
        for pair in bytes.chunks(2) {
            if pair[0] != b'e' {
                return None;
            }
            let idx = (pair[1] as char).to_digit(10)? as usize;
            gens.push(Generator::from_index(idx)?);
        }
        Some(Word(gens))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A formal λ-polynomial-linear combination of words: an element of the
/// free associative algebra on {e0, e1, e2}, i.e. of U(sl2) once the
/// commutation relations are imposed by [`pbw_normalize`](Self::pbw_normalize)
/// or transparently by [`embed`](Self::embed).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UeaElement {
    terms: BTreeMap<Word, LambdaPoly>,
}

impl UeaElement {
    pub fn zero() -> Self {
        UeaElement::default()
    }

    /// The unit: the empty word.
    pub fn one() -> Self {
        UeaElement::from_word(Word::empty())
    }

    pub fn scalar(c: LambdaPoly) -> Self {
        let mut u = UeaElement::zero();
        u.add_word(Word::empty(), c);
        u
    }

    pub fn generator(g: Generator) -> Self {
        UeaElement::from_word(Word::new(vec![g]))
    }

    pub fn from_word(w: Word) -> Self {
        let mut u = UeaElement::zero();
        u.add_word(w, LambdaPoly::one());
        u
    }

    pub fn add_word(&mut self, w: Word, c: LambdaPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LambdaPoly)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &LambdaPoly) -> UeaElement {
        let mut out = UeaElement::zero();
        for (w, coeff) in &self.terms {
            out.add_word(w.clone(), coeff * c);
        }
        out
    }

    /// True when every word is PBW-normal (non-decreasing).
    pub fn is_pbw_normal(&self) -> bool {
        self.terms.keys().all(Word::is_sorted)
    }

    /// Rewrites the element into the PBW basis e0^a e1^b e2^c by repeatedly
    /// replacing adjacent out-of-order pairs `e_j e_i → e_i e_j − [e_i, e_j]`.
    /// Idempotent and equal to the input in U(sl2).
    pub fn pbw_normalize(&self) -> UeaElement {
        let mut result = UeaElement::zero();
        let mut pending: Vec<(Word, LambdaPoly)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        while let Some((word, coeff)) = pending.pop() {
            let Some(pos) = word.0.windows(2).position(|w| w[0] > w[1]) else {
                result.add_word(word, coeff);
                continue;
            };
            // e_j e_i = e_i e_j − [e_i, e_j] with [e_i, e_j] = (j−i)·e_{i+j−1}
            let (hi, lo) = (word.0[pos], word.0[pos + 1]);
            let mut swapped = word.0.clone();
            swapped.swap(pos, pos + 1);
            pending.push((Word(swapped), coeff.clone()));
            let (i, j) = (lo.index(), hi.index());
            let factor = rat(j as i64 - i as i64, 1);
            let mid = Generator::from_index(i + j - 1).expect("sl2 closed under bracket");
            let mut contracted = word.0.clone();
            contracted.splice(pos..pos + 2, [mid]);
            pending.push((Word(contracted), coeff.scale(&-factor)));
        }
        result
    }

    /// The evaluation homomorphism T_λ into differential operators: each
    /// word maps to the composition of the Lie derivatives of its letters
    /// (with symbolic λ); the empty word maps to the identity operator.
    pub fn embed(&self) -> DiffOp {
        let lie: [DiffOp; 3] = [
            lie_derivative(&Generator::E0.field(), &Weight::Symbolic),
            lie_derivative(&Generator::E1.field(), &Weight::Symbolic),
            lie_derivative(&Generator::E2.field(), &Weight::Symbolic),
        ];
        let mut out = DiffOp::zero();
        for (word, coeff) in &self.terms {
            let mut prod = DiffOp::identity();
            for g in word.gens() {
                prod = prod.compose(&lie[g.index()]);
            }
            out = &out + &prod.scale(coeff);
        }
        out
    }

    /// True iff the element lies in the kernel of the evaluation
    /// homomorphism — the ideal generated by Δ − λ(λ−1) — symbolically in λ.
    pub fn kernel_test(&self) -> bool {
        self.embed().is_zero()
    }

    /// The principal-symbol projection through S(sl2): each word of maximal
    /// length maps to `x^{i_1+⋯+i_n}·ξ^n`; shorter words are dropped.
    pub fn principal_projection(&self) -> SymbolPoly {
        let Some(top) = self.terms.keys().map(Word::len).max() else {
            return SymbolPoly::zero();
        };
        let mut out = SymbolPoly::zero();
        for (word, coeff) in &self.terms {
            if word.len() != top {
                continue;
            }
            let xpow: usize = word.gens().iter().map(|g| g.index()).sum();
            out = &out + &SymbolPoly::term(xpow, top, coeff.clone());
        }
        out
    }
}

impl Add for &UeaElement {
    type Output = UeaElement;
    fn add(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &UeaElement {
    type Output = UeaElement;
    fn sub(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_word(w.clone(), -c);
        }
        out
    }
}

impl Neg for &UeaElement {
    type Output = UeaElement;
    fn neg(self) -> UeaElement {
        let mut out = UeaElement::zero();
        for (w, c) in &self.terms {
            out.add_word(w.clone(), -c);
        }
        out
    }
}

impl Mul for &UeaElement {
    type Output = UeaElement;
    /// Bilinear extension of word concatenation (the free product; PBW
    /// normalization is separate).
    fn mul(self, rhs: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut gens = w1.0.clone();
                gens.extend_from_slice(&w2.0);
                out.add_word(Word(gens), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if w.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    w.to_string()
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Casimir element `Δ = e1² − ½(e0e2 + e2e0)`, in un-normalized word
/// form. It generates the center of U(sl2).
pub fn casimir() -> UeaElement {
    let e0 = UeaElement::generator(Generator::E0);
    let e1 = UeaElement::generator(Generator::E1);
    let e2 = UeaElement::generator(Generator::E2);
    let half = LambdaPoly::constant(rat(1, 2));
    &(&e1 * &e1) - &(&(&e0 * &e2) + &(&e2 * &e0)).scale(&half)
}

/// The ideal generator `Δ − λ(λ−1)` whose quotient is gl(λ).
pub fn casimir_ideal_generator() -> UeaElement {
    &casimir() - &UeaElement::scalar(LambdaPoly::from_ints(&[0, -1, 1]))
}

/// The symmetrization `(X_1 ⋯ X_n)_+ = Σ_{τ∈S_n} X_{τ(1)} ⋯ X_{τ(n)}`
/// of a generator multiset, with multiplicity when generators repeat and no
/// 1/n! normalization.
pub fn symmetrize_word(gens: &[Generator]) -> Result<UeaElement, Error> {
    if gens.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut out = UeaElement::zero();
    crate::densityops::for_each_permutation(gens.len(), |perm| {
        let word: Vec<Generator> = perm.iter().map(|&i| gens[i]).collect();
        out.add_word(Word(word), LambdaPoly::one());
    });
    Ok(out)
}

/// The gl(λ) bracket computed in its faithful operator image:
/// `[embed(u), embed(v)]`.
pub fn gl_bracket_image(u: &UeaElement, v: &UeaElement) -> DiffOp {
    u.embed().commutator(&v.embed())
}
