//! Text format for polynomials and polynomial files.
//!
//! ```text
//! ring 3 : x y z
//! # comment
//! x*y + z
//! ```
//!
//! The header declares the variable count and optionally the names (default
//! `x1..xn`). Each further non-blank, non-comment line is one polynomial: a
//! sum of terms, each term `1` or a product of variables. Exponents (`x^2`)
//! and repeated factors collapse because `x^2 = x`, and repeated terms cancel
//! in pairs. `0` is accepted as the zero polynomial.

use std::fmt::Write as _;

use thiserror::Error;

use crate::ring::{Monomial, Polynomial, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected a term")]
    ExpectedTerm,
    #[error("invalid constant {0:?}, only 0 and 1 exist in F2")]
    InvalidConstant(String),
    #[error("invalid exponent {0:?}")]
    InvalidExponent(String),
    #[error("missing ring header")]
    MissingHeader,
    #[error("malformed ring header: {0}")]
    Header(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("expected an update of the form `name = polynomial`")]
    ExpectedUpdate,
    #[error("variable {0:?} is updated more than once")]
    DuplicateTarget(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// A ring together with a list of generators, as read from a polynomial file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFile {
    pub ring: Ring,
    pub polys: Vec<Polynomial>,
}

/// Parses a single polynomial over `ring`. Error positions refer to line 1.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    parse_poly_at(text, ring, 1, 0)
}

/// Parses a polynomial appearing on `line`, starting at character offset
/// `offset` of that line (used to report absolute columns).
pub(crate) fn parse_poly_at(
    text: &str,
    ring: &Ring,
    line: usize,
    offset: usize,
) -> Result<Polynomial, ParseError> {
    let mut parser = PolyParser {
        chars: text.chars().collect(),
        pos: 0,
        ring,
        line,
        offset,
    };
    parser.polynomial()
}

struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
    line: usize,
    offset: usize,
}

impl PolyParser<'_> {
    fn err(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.offset + at + 1, kind)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut terms = Vec::new();
        loop {
            if let Some(t) = self.term()? {
                terms.push(t);
            }
            match self.peek() {
                None => break,
                Some('+') => self.pos += 1,
                Some(c) => return Err(self.err(self.pos, ParseErrorKind::UnexpectedChar(c))),
            }
        }
        Ok(Polynomial::from_terms(terms))
    }

    /// One product of factors; `None` when a factor is the constant 0.
    fn term(&mut self) -> Result<Option<Monomial>, ParseError> {
        let mut mono = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            mono = match (mono, f) {
                (Some(a), Some(b)) => Some(a.mul(b)),
                _ => None,
            };
        }
        Ok(mono)
    }

    fn factor(&mut self) -> Result<Option<Monomial>, ParseError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.err(self.pos, ParseErrorKind::ExpectedTerm)),
        };
        let c = self.chars[start];
        if c.is_ascii_digit() {
            let digits = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            return match digits.as_str() {
                "1" => Ok(Some(Monomial::ONE)),
                "0" => Ok(None),
                _ => Err(self.err(start, ParseErrorKind::InvalidConstant(digits))),
            };
        }
        if !(c.is_ascii_alphabetic() || c == '_') {
            return Err(self.err(
                start,
                if c == '+' || c == '*' {
                    ParseErrorKind::ExpectedTerm
                } else {
                    ParseErrorKind::UnexpectedChar(c)
                },
            ));
        }
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        let var = match self.ring.index_of(&name) {
            Some(i) => self.ring.var(i),
            None => return Err(self.err(start, ParseErrorKind::UnknownVariable(name))),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let exp = self.take_while(|c| c.is_ascii_alphanumeric());
            match exp.parse::<u32>() {
                Ok(0) => return Ok(Some(Monomial::ONE)),
                Ok(_) => {}
                Err(_) => return Err(self.err(at, ParseErrorKind::InvalidExponent(exp))),
            }
        }
        Ok(Some(var))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| pred(c)) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

/// Canonical text of a polynomial: terms in descending lex order joined by
/// `" + "`, variables within a term in ring order joined by `*`.
pub fn render_poly(f: &Polynomial, ring: &Ring) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, &t) in f.terms().iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&render_monomial(t, ring));
    }
    out
}

pub fn render_monomial(m: Monomial, ring: &Ring) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let names: Vec<&str> = m
        .variables()
        .map(|v| ring.name(ring.index_of_bit(v.mask().trailing_zeros())))
        .collect();
    names.join("*")
}

/// Header line for `ring`; the name list is omitted when it is the default.
pub fn render_header(ring: &Ring) -> String {
    let default = ring
        .names()
        .iter()
        .enumerate()
        .all(|(i, n)| *n == format!("x{}", i + 1));
    if default {
        format!("ring {}", ring.nvars())
    } else {
        format!("ring {} : {}", ring.nvars(), ring.names().join(" "))
    }
}

/// Renders a full polynomial file; zero polynomials are written as `0`.
pub fn render_poly_file(ring: &Ring, polys: &[Polynomial]) -> String {
    let mut out = render_header(ring);
    out.push('\n');
    for f in polys {
        let _ = writeln!(out, "{}", render_poly(f, ring));
    }
    out
}

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, l))
    })
}

pub(crate) fn parse_header(line: &str, lineno: usize) -> Result<Ring, ParseError> {
    let herr = |msg: &str| ParseError::new(lineno, 1, ParseErrorKind::Header(msg.to_string()));
    let trimmed = line.trim();
    let rest = trimmed
        .strip_prefix("ring")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| ParseError::new(lineno, 1, ParseErrorKind::MissingHeader))?;
    let (count, names) = match rest.split_once(':') {
        Some((c, n)) => (c.trim(), Some(n)),
        None => (rest.trim(), None),
    };
    let nvars: usize = count
        .parse()
        .map_err(|_| herr(&format!("expected a variable count, found {count:?}")))?;
    let ring = match names {
        None => Ring::new(nvars),
        Some(list) => {
            let names: Vec<&str> = list.split_whitespace().collect();
            if names.len() != nvars {
                return Err(herr(&format!(
                    "declared {nvars} variables but named {}",
                    names.len()
                )));
            }
            Ring::with_names(names)
        }
    };
    ring.map_err(|e| ParseError::new(lineno, 1, e.into()))
}

/// Numbered content lines after the header.
pub(crate) type Body<'a> = Vec<(usize, &'a str)>;

/// Splits a file into its ring header and the remaining content lines.
pub(crate) fn split_header(text: &str) -> Result<(Ring, Body<'_>), ParseError> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::MissingHeader))?;
    let ring = parse_header(header, lineno)?;
    Ok((ring, lines.collect()))
}

pub fn parse_poly_file(text: &str) -> Result<PolyFile, ParseError> {
    let (ring, lines) = split_header(text)?;
    let polys = lines
        .into_iter()
        .map(|(lineno, l)| parse_poly_at(l, &ring, lineno, 0))
        .collect::<Result<_, _>>()?;
    Ok(PolyFile { ring, polys })
}
