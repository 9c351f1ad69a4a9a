//! Brute-force checks that share no code path with the Gröbner engine:
//! variety enumeration, dense polynomial arithmetic that can represent the
//! field polynomials, and a backtracking Shidoku solver.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::encoders::{ShidokuGrid, ShidokuPuzzle};
use crate::ring::{Monomial, Point, Polynomial, Ring};

/// Default largest variable count for exhaustive enumeration (2^24 points).
pub const DEFAULT_VARIETY_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{nvars} variables exceed the enumeration cap of {cap}")]
    CapExceeded { nvars: usize, cap: usize },
    #[error("x{} does not divide the leading term", .0 + 1)]
    NotFieldPair(usize),
    #[error("exponent of x{} would exceed 2", .0 + 1)]
    ExponentOverflow(usize),
}

/// The common zeros of a generator list in `{0,1}^n`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyReport {
    nvars: usize,
    points: Vec<Point>,
}

impl VarietyReport {
    /// Panics if some point fails to satisfy some generator.
    pub fn new(gens: &[Polynomial], nvars: usize, mut points: Vec<Point>) -> Self {
        for p in &points {
            assert!(
                gens.iter().all(|g| !g.eval(*p)),
                "point {:#b} is not a common zero",
                p.bits()
            );
        }
        points.sort_unstable();
        points.dedup();
        VarietyReport { nvars, points }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn enumerate_variety(gens: &[Polynomial], ring: &Ring) -> Result<VarietyReport, OracleError> {
    enumerate_variety_capped(gens, ring, DEFAULT_VARIETY_CAP)
}

pub fn enumerate_variety_capped(
    gens: &[Polynomial],
    ring: &Ring,
    cap: usize,
) -> Result<VarietyReport, OracleError> {
    let n = ring.nvars();
    if n > cap || n >= 64 {
        return Err(OracleError::CapExceeded { nvars: n, cap });
    }
    let points = (0..1u64 << n)
        .map(Point)
        .filter(|&p| gens.iter().all(|g| !g.eval(p)))
        .collect();
    Ok(VarietyReport { nvars: n, points })
}

/// Compares the two varieties. For Boolean ideals this decides ideal
/// equality, since ideals containing the field polynomials are radical.
pub fn varieties_equal(
    a: &[Polynomial],
    b: &[Polynomial],
    ring: &Ring,
) -> Result<bool, OracleError> {
    Ok(enumerate_variety(a, ring)? == enumerate_variety(b, ring)?)
}

/// Exponent vector indexed by 0-based variable index (`x1` first), entries
/// in `0..=2`. Vector comparison is lex order with `x1 > x2 > ...`.
type Exponents = Vec<u8>;

/// A polynomial over F2 in the ordinary ring `F2[x1..xn]` with exponents up
/// to 2, so that `x_i^2 + x_i` is representable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DensePoly {
    nvars: usize,
    terms: BTreeSet<Exponents>,
}

impl DensePoly {
    pub fn zero(nvars: usize) -> Self {
        DensePoly {
            nvars,
            terms: BTreeSet::new(),
        }
    }

    /// Lifts a multilinear polynomial, reading each variable from its name's
    /// position in the ring rather than from the bit layout.
    pub fn from_polynomial(f: &Polynomial, ring: &Ring) -> Self {
        let mut out = Self::zero(ring.nvars());
        for &t in f.terms() {
            let exps = (0..ring.nvars())
                .map(|i| u8::from(t.mask() >> (ring.nvars() - 1 - i) & 1 == 1))
                .collect();
            out.toggle(exps);
        }
        out
    }

    pub fn monomial(exps: Exponents) -> Self {
        let mut out = Self::zero(exps.len());
        out.toggle(exps);
        out
    }

    /// `x_i^2 + x_i` for the 0-based variable index `i`.
    pub fn field_polynomial(i: usize, nvars: usize) -> Self {
        let mut sq = vec![0; nvars];
        sq[i] = 2;
        let mut lin = vec![0; nvars];
        lin[i] = 1;
        let mut out = Self::monomial(sq);
        out.toggle(lin);
        out
    }

    fn toggle(&mut self, exps: Exponents) {
        if !self.terms.remove(&exps) {
            self.terms.insert(exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Exponents> {
        self.terms.last()
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone());
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[u8]) -> Result<DensePoly, OracleError> {
        let mut out = Self::zero(self.nvars);
        for t in &self.terms {
            let mut prod = t.clone();
            for (i, (a, &b)) in prod.iter_mut().zip(exps).enumerate() {
                *a += b;
                if *a > 2 {
                    return Err(OracleError::ExponentOverflow(i));
                }
            }
            out.toggle(prod);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &DensePoly) -> Result<DensePoly, OracleError> {
        let mut out = Self::zero(self.nvars);
        for t in &other.terms {
            out = out.add(&self.mul_monomial(t)?);
        }
        Ok(out)
    }

    /// S-polynomial in `F2[x1..xn]`.
    pub fn s_polynomial(&self, other: &DensePoly) -> Result<DensePoly, OracleError> {
        let (Some(a), Some(b)) = (self.leading(), other.leading()) else {
            return Ok(Self::zero(self.nvars));
        };
        let lcm: Exponents = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
        let fa: Exponents = lcm.iter().zip(a).map(|(l, x)| l - x).collect();
        let fb: Exponents = lcm.iter().zip(b).map(|(l, y)| l - y).collect();
        Ok(self.mul_monomial(&fa)?.add(&other.mul_monomial(&fb)?))
    }

    /// Image in the quotient ring: every exponent 2 becomes 1, then equal
    /// terms cancel.
    pub fn to_multilinear(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|exps| {
            let mut mask = 0u64;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    mask |= 1u64 << (ring.nvars() - 1 - i);
                }
            }
            Monomial(mask)
        }))
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.iter().flatten().all(|&e| e <= 1)
    }
}

/// S-polynomial of `f` with `x_i^2 + x_i` computed in the covering ring
/// `F2[x1..xn]`, then mapped to the quotient ring. `i` is 0-based.
pub fn dense_field_s_polynomial(
    f: &Polynomial,
    i: usize,
    ring: &Ring,
) -> Result<Polynomial, OracleError> {
    let dense = DensePoly::from_polynomial(f, ring);
    match dense.leading() {
        Some(lt) if lt[i] == 1 => {}
        _ => return Err(OracleError::NotFieldPair(i)),
    }
    let s = dense.s_polynomial(&DensePoly::field_polynomial(i, ring.nvars()))?;
    Ok(s.to_multilinear(ring))
}

/// `m * f` computed densely and mapped back to the quotient ring.
pub fn dense_monomial_product(m: Monomial, f: &Polynomial, ring: &Ring) -> Polynomial {
    let m = DensePoly::from_polynomial(&Polynomial::from_monomial(m), ring);
    let f = DensePoly::from_polynomial(f, ring);
    m.mul(&f)
        .expect("multilinear factors stay within exponent 2")
        .to_multilinear(ring)
}

/// All completions of `puzzle` (at most `limit`), searching cells row-major
/// and values in ascending order.
pub fn solve_shidoku_backtracking(puzzle: &ShidokuPuzzle, limit: usize) -> Vec<ShidokuGrid> {
    let mut grid = *puzzle.grid();
    let mut out = Vec::new();
    if clues_consistent(&grid) {
        search(&mut grid, 0, limit, &mut out);
    }
    out
}

fn allowed(grid: &ShidokuGrid, r: usize, c: usize, v: u8) -> bool {
    let (br, bc) = (r / 2 * 2, c / 2 * 2);
    (0..4).all(|k| {
        (k == c || grid[r][k] != v)
            && (k == r || grid[k][c] != v)
            && ((br + k / 2, bc + k % 2) == (r, c) || grid[br + k / 2][bc + k % 2] != v)
    })
}

fn clues_consistent(grid: &ShidokuGrid) -> bool {
    (0..16).all(|k| {
        let (r, c) = (k / 4, k % 4);
        grid[r][c] == 0 || allowed(grid, r, c, grid[r][c])
    })
}

fn search(grid: &mut ShidokuGrid, cell: usize, limit: usize, out: &mut Vec<ShidokuGrid>) {
    if out.len() >= limit {
        return;
    }
    if cell == 16 {
        out.push(*grid);
        return;
    }
    let (r, c) = (cell / 4, cell % 4);
    if grid[r][c] != 0 {
        search(grid, cell + 1, limit, out);
        return;
    }
    for v in 1..=4 {
        if allowed(grid, r, c, v) {
            grid[r][c] = v;
            search(grid, cell + 1, limit, out);
            grid[r][c] = 0;
        }
    }
}
