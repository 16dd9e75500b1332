//! Exact scalar and polynomial arithmetic: big rationals, the ring ℚ[λ],
//! Stirling numbers of the second kind, and generalized binomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

/// The base scalar field: arbitrary-precision rationals, always kept in
/// lowest terms with a positive denominator.
pub type Rational = num::rational::BigRational;

/// Shorthand constructor for `p/q`. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand constructor for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Ordinary binomial coefficient `C(n, k)` for nonnegative arguments.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Stirling number of the second kind `{n k}`: the number of partitions of
/// an `n`-set into `k` nonempty blocks.
///
/// Computed by the recurrence `{n,k} = {n-1,k-1} + k·{n-1,k}` with
/// `{0,0} = 1`, `{n,0} = 0` for `n > 0` and `{0,k} = 0` for `k > 0`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    if k == 0 {
        return BigInt::zero();
    }
    // row-by-row memoized recurrence
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        let hi = k.min(i);
        for j in (1..=hi).rev() {
            let carry = row[j - 1].clone();
            row[j] = carry + &row[j] * BigInt::from(j);
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// A univariate polynomial in the formal density degree λ with rational
/// coefficients, stored by ascending power with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    /// The zero polynomial (empty coefficient sequence).
    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LambdaPoly::constant(Rational::one())
    }

    /// The monomial λ.
    pub fn lambda() -> Self {
        LambdaPoly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        LambdaPoly::from_coeffs(vec![c])
    }

    pub fn constant_int(c: i64) -> Self {
        LambdaPoly::constant(rat_int(c))
    }

    /// `c·λ^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        LambdaPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros to restore canonical form.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    /// Convenience constructor from integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        LambdaPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of λ^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Ascending coefficient slice, canonical (no trailing zeros).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact Horner evaluation at λ = `v`.
    pub fn eval(&self, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for LambdaPoly {
    /// Human-readable ASCII form, descending powers: `l^2 - l`, `-1/2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match i {
                0 => String::new(),
                1 => "l".to_string(),
                _ => format!("l^{i}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

/// The generalized binomial coefficient `C(arg, m) = arg(arg−1)⋯(arg−m+1)/m!`
/// with a polynomial argument; the result is again a polynomial in λ.
pub fn generalized_binomial(arg: &LambdaPoly, m: usize) -> LambdaPoly {
    let mut acc = LambdaPoly::one();
    for i in 0..m {
        let factor = arg - &LambdaPoly::constant_int(i as i64);
        acc = &acc * &factor;
    }
    acc.scale(&Rational::new(BigInt::one(), factorial(m)))
}

/// Interpolates the unique polynomial of degree < `points.len()` through the
/// given (distinct-abscissa) sample points, exactly.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> LambdaPoly {
    let mut result = LambdaPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = LambdaPoly::one();
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = &basis * &LambdaPoly::from_coeffs(vec![-xj, Rational::one()]);
            denom *= xi - xj;
        }
        result = &result + &basis.scale(&(yi / denom));
    }
    result
}
