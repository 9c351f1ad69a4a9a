//! Bitmask arithmetic for Boolean monomials and multilinear polynomials.
//!
//! A monomial in `n` variables is one `u64` whose set bits are the variables
//! present. Variable `x_i` (1-based) lives at bit `n - i`, so `x1` is the most
//! significant used bit and lexicographic order with `x1 > x2 > ... > xn`
//! coincides with unsigned integer order on the masks.
//!
//! Because `x_i^2 = x_i` in the quotient ring, multiplication and lcm are both
//! bitwise OR, exact division is XOR, and addition of identical monomials
//! cancels.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest number of indeterminates a single machine word can hold.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring must have between 1 and {MAX_VARS} variables, got {0}")]
    VariableCount(usize),
    #[error("variable name {0:?} is not a valid identifier")]
    InvalidName(String),
    #[error("variable name {0:?} appears more than once")]
    DuplicateName(String),
    #[error("{numerator} is not divisible by {denominator}")]
    NotDivisible {
        numerator: Monomial,
        denominator: Monomial,
    },
}

/// A squarefree monomial stored as a bitmask. The mask `0` is the constant 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn degree(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Product in the quotient ring. This is also the lcm.
    #[inline]
    pub const fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    #[inline]
    pub const fn lcm(self, other: Monomial) -> Monomial {
        self.mul(other)
    }

    /// True when `divisor` divides `self`, i.e. every variable of `divisor`
    /// also occurs in `self`.
    #[inline]
    pub const fn is_divisible_by(self, divisor: Monomial) -> bool {
        divisor.0 & !self.0 == 0
    }

    /// Exact quotient `self / divisor`.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, divisor: Monomial) -> Result<Monomial, RingError> {
        if self.is_divisible_by(divisor) {
            Ok(self.div_unchecked(divisor))
        } else {
            Err(RingError::NotDivisible {
                numerator: self,
                denominator: divisor,
            })
        }
    }

    /// Quotient without the divisibility check. The caller guarantees
    /// `self.is_divisible_by(divisor)`.
    #[inline]
    pub const fn div_unchecked(self, divisor: Monomial) -> Monomial {
        Monomial(self.0 ^ divisor.0)
    }

    #[inline]
    pub const fn is_coprime(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    /// Lexicographic comparison (`x1 > x2 > ... > xn`).
    #[inline]
    pub fn lex_cmp(self, other: Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Iterates over the single-variable monomials dividing `self`, highest
    /// bit first.
    pub fn variables(self) -> impl Iterator<Item = Monomial> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let top = 63 - rest.leading_zeros();
            rest &= !(1u64 << top);
            Some(Monomial(1u64 << top))
        })
    }

    /// Value of the monomial at `point`.
    #[inline]
    pub const fn eval(self, point: Point) -> bool {
        self.0 & point.0 == self.0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({:#b})", self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// An assignment of 0/1 values to the variables, with the same bit layout as
/// [`Monomial`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Point(pub u64);

impl Point {
    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }
}

/// A multilinear polynomial over F2.
///
/// Terms are kept strictly descending in lex order with no repeats. The empty
/// list is the zero polynomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub const fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            terms: vec![Monomial::ONE],
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Polynomial { terms: vec![m] }
    }

    /// Builds a polynomial from an arbitrary list of monomials, sorting them
    /// and cancelling repeated terms in pairs.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut terms: Vec<Monomial> = terms.into_iter().collect();
        canonicalize(&mut terms);
        Polynomial { terms }
    }

    /// Wraps a list that is already strictly descending.
    ///
    /// Panics in debug builds if the list is not canonical.
    pub fn from_sorted_terms(terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn leading_term(&self) -> Option<Monomial> {
        self.terms.first().copied()
    }

    /// `self + lt(self)`.
    pub fn tail(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.get(1..).unwrap_or_default().to_vec(),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.degree()).max()
    }

    /// Union of the variables occurring in any term.
    pub fn support(&self) -> u64 {
        self.terms.iter().fold(0, |acc, t| acc | t.0)
    }

    /// Sum over F2: the symmetric difference of the term sets.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }

    /// Product with a single monomial in the quotient ring.
    pub fn mul_monomial(&self, m: Monomial) -> Polynomial {
        if m.is_one() {
            return self.clone();
        }
        let mut terms: Vec<Monomial> = self.terms.iter().map(|&t| t.mul(m)).collect();
        canonicalize(&mut terms);
        Polynomial { terms }
    }

    /// Full product in the quotient ring.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for &s in &self.terms {
            for &t in &other.terms {
                terms.push(s.mul(t));
            }
        }
        canonicalize(&mut terms);
        Polynomial { terms }
    }

    /// Value of the polynomial at `point`.
    pub fn eval(&self, point: Point) -> bool {
        self.terms.iter().fold(false, |acc, &t| acc ^ t.eval(point))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.terms).finish()
    }
}

/// Sorts descending and removes repeated terms in pairs.
pub(crate) fn canonicalize(terms: &mut Vec<Monomial>) {
    terms.sort_unstable_by(|a, b| b.cmp(a));
    let mut write = 0;
    let mut read = 0;
    while read < terms.len() {
        let t = terms[read];
        let mut run = 1;
        while read + run < terms.len() && terms[read + run] == t {
            run += 1;
        }
        if run % 2 == 1 {
            terms[write] = t;
            write += 1;
        }
        read += run;
    }
    terms.truncate(write);
}

/// The quotient ring `F2[x1..xn]/<xi^2 + xi>`: fixes the variable count, the
/// variable names and the bit assigned to each variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    /// Ring with variables named `x1..xn`.
    pub fn new(nvars: usize) -> Result<Self, RingError> {
        Self::with_names((1..=nvars).map(|i| format!("x{i}")))
    }

    pub fn with_names<I, S>(names: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(RingError::VariableCount(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(RingError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(RingError::DuplicateName(name.clone()));
            }
        }
        Ok(Ring { names })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of the variable with 0-based index `i` (that is, `x_{i+1}`).
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Bit position of the variable with 0-based index `i`.
    #[inline]
    pub fn bit(&self, i: usize) -> u32 {
        assert!(i < self.nvars(), "variable index {i} out of range");
        (self.nvars() - 1 - i) as u32
    }

    /// 0-based variable index owning bit position `bit`.
    #[inline]
    pub fn index_of_bit(&self, bit: u32) -> usize {
        self.nvars() - 1 - bit as usize
    }

    /// The monomial consisting of the single variable with 0-based index `i`.
    #[inline]
    pub fn var(&self, i: usize) -> Monomial {
        Monomial(1u64 << self.bit(i))
    }

    /// Mask with every variable of the ring set.
    pub fn full_mask(&self) -> u64 {
        if self.nvars() == MAX_VARS {
            u64::MAX
        } else {
            (1u64 << self.nvars()) - 1
        }
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        f.support() & !self.full_mask() == 0
    }

    /// Point that sets exactly the listed variables (0-based indices) to 1.
    pub fn point<I: IntoIterator<Item = usize>>(&self, ones: I) -> Point {
        Point(ones.into_iter().fold(0, |acc, i| acc | self.var(i).0))
    }

    /// The point as a string of 0/1 characters in variable order `x1..xn`.
    pub fn render_point(&self, p: Point) -> String {
        (0..self.nvars())
            .map(|i| if p.0 & self.var(i).0 != 0 { '1' } else { '0' })
            .collect()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    // x = 100, y = 010, z = 001
    const X: Monomial = Monomial(0b100);
    const Y: Monomial = Monomial(0b010);
    const Z: Monomial = Monomial(0b001);
    const XY: Monomial = Monomial(0b110);
    const XZ: Monomial = Monomial(0b101);
    const YZ: Monomial = Monomial(0b011);
    const XYZ: Monomial = Monomial(0b111);

    fn poly(ts: &[Monomial]) -> Polynomial {
        Polynomial::from_terms(ts.iter().copied())
    }

    #[test]
    fn monomial_products() {
        assert_eq!(X.mul(Y), XY);
        assert_eq!(X.mul(X), X);
        assert_eq!(XY.mul(YZ), XYZ);
        assert_eq!(XY.lcm(YZ), XY.mul(YZ));
    }

    #[test]
    fn divisibility() {
        assert!(XY.is_divisible_by(X));
        assert!(!X.is_divisible_by(Y));
        assert!(XYZ.is_divisible_by(Monomial::ONE));
        assert!(Monomial::ONE.is_divisible_by(Monomial::ONE));
        // integer subtraction would claim y | x
        assert!(X.0 > Y.0 && !X.is_divisible_by(Y));
    }

    #[test]
    fn division() {
        assert_eq!(XY.div(X).unwrap(), Y);
        assert_eq!(XYZ.div(XZ).unwrap(), Y);
        assert_eq!(X.div(X).unwrap(), Monomial::ONE);
        assert_eq!(
            X.div(Y),
            Err(RingError::NotDivisible {
                numerator: X,
                denominator: Y
            })
        );
    }

    #[test]
    fn coprimality() {
        assert!(X.is_coprime(YZ));
        assert!(!XY.is_coprime(YZ));
        assert!(Monomial::ONE.is_coprime(XYZ));
    }

    #[test]
    fn lex_order() {
        assert_eq!(X.lex_cmp(Y), Ordering::Greater);
        assert_eq!(XY.lex_cmp(XZ), Ordering::Greater);
        assert_eq!(Z.lex_cmp(Monomial::ONE), Ordering::Greater);
        assert_eq!(XZ.lex_cmp(XZ), Ordering::Equal);
    }

    #[test]
    fn addition_cancels() {
        assert_eq!(poly(&[XY, Z]).add(&poly(&[XY, X])), poly(&[X, Z]));
        assert_eq!(poly(&[XY, Z]).add(&Polynomial::zero()), poly(&[XY, Z]));
        assert_eq!(poly(&[XY, Z]).add(&poly(&[Y, Z])), poly(&[XY, Y]));
        let f = poly(&[XYZ, Y, Monomial::ONE]);
        assert!(f.add(&f).is_zero());
    }

    #[test]
    fn monomial_times_polynomial() {
        assert_eq!(poly(&[XY, Z]).mul_monomial(X), poly(&[XY, XZ]));
        assert_eq!(poly(&[X, Monomial::ONE]).mul_monomial(Y), poly(&[XY, Y]));
        assert!(poly(&[XZ, X]).mul_monomial(Z).is_zero());
    }

    #[test]
    fn evaluation() {
        let f = poly(&[XY, Z]);
        assert!(!f.eval(Point(0b111)));
        assert!(!f.eval(Point(0b000)));
        assert!(f.eval(Point(0b001)));
        assert!(Polynomial::one().eval(Point(0b101)));
        assert!(!Polynomial::zero().eval(Point(0b101)));
    }

    #[test]
    fn canonical_form() {
        let f = Polynomial::from_terms([Z, X, Z, Z, Monomial::ONE, X]);
        assert_eq!(f.terms(), &[Z, Monomial::ONE]);
        assert_eq!(f.leading_term(), Some(Z));
        assert_eq!(f.tail(), Polynomial::one());
        assert_eq!(Polynomial::zero().leading_term(), None);
    }

    #[test]
    fn ring_bit_layout() {
        let r = Ring::with_names(["x", "y", "z"]).unwrap();
        assert_eq!(r.var(0), X);
        assert_eq!(r.var(1), Y);
        assert_eq!(r.var(2), Z);
        assert_eq!(r.full_mask(), 0b111);
        assert_eq!(r.render_point(Point(0b110)), "110");
        let wide = Ring::new(64).unwrap();
        assert_eq!(wide.var(0), Monomial(1 << 63));
        assert_eq!(wide.full_mask(), u64::MAX);
        assert_eq!(wide.name(63), "x64");
    }

    #[test]
    fn ring_validation() {
        assert_eq!(Ring::new(0), Err(RingError::VariableCount(0)));
        assert_eq!(Ring::new(65), Err(RingError::VariableCount(65)));
        assert!(matches!(
            Ring::with_names(["a", "a"]),
            Err(RingError::DuplicateName(_))
        ));
        assert!(matches!(
            Ring::with_names(["a", "1b"]),
            Err(RingError::InvalidName(_))
        ));
    }

    #[test]
    fn variables_iterate_high_to_low() {
        let vs: Vec<_> = XZ.variables().collect();
        assert_eq!(vs, vec![X, Z]);
        assert_eq!(Monomial::ONE.variables().count(), 0);
    }
}
