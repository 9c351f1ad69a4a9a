//! Problem encoders: Shidoku puzzles, fixed points of Boolean update models,
//! and seeded random ideals.

use std::collections::HashSet;
use std::fmt;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::buchberger::GroebnerBasis;
use crate::ring::{Monomial, Point, Polynomial, Ring, MAX_VARS};
use crate::text::{parse_poly_at, split_header, ParseError, ParseErrorKind};

/// A solved or partially filled 4×4 grid; `0` marks an empty cell.
pub type ShidokuGrid = [[u8; 4]; 4];

/// Cells of each 2×2 block, as (row, column) pairs, 0-based.
const BLOCKS: [[(usize, usize); 4]; 4] = [
    [(0, 0), (0, 1), (1, 0), (1, 1)],
    [(0, 2), (0, 3), (1, 2), (1, 3)],
    [(2, 0), (2, 1), (3, 0), (3, 1)],
    [(2, 2), (2, 3), (3, 2), (3, 3)],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ShidokuPuzzle {
    cells: ShidokuGrid,
}

impl ShidokuPuzzle {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Panics if any entry is outside `0..=4`.
    pub fn from_grid(cells: ShidokuGrid) -> Self {
        assert!(
            cells.iter().flatten().all(|&v| v <= 4),
            "entries must be 0..=4"
        );
        ShidokuPuzzle { cells }
    }

    pub fn grid(&self) -> &ShidokuGrid {
        &self.cells
    }

    /// Clue at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Option<u8> {
        match self.cells[row - 1][col - 1] {
            0 => None,
            v => Some(v),
        }
    }

    /// Sets the clue at 1-based `(row, col)`; `0` clears it.
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        assert!(value <= 4, "value must be 0..=4");
        self.cells[row - 1][col - 1] = value;
    }

    /// Clues as 1-based `(row, col, value)` in row-major order.
    pub fn clues(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        (0..16).filter_map(move |k| {
            let v = self.cells[k / 4][k % 4];
            (v != 0).then_some((k / 4 + 1, k % 4 + 1, v))
        })
    }
}

impl fmt::Display for ShidokuPuzzle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.cells.iter().flatten() {
            match v {
                0 => f.write_str(".")?,
                v => write!(f, "{v}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClueError {
    #[error("expected 16 cells, found {0}")]
    Length(usize),
    #[error("illegal character {ch:?} at position {position}")]
    Character { position: usize, ch: char },
}

/// Reads 16 cells row-major from `{1,2,3,4,.}`; whitespace is ignored.
/// Positions in errors are 1-based offsets into `text`.
pub fn parse_clues(text: &str) -> Result<ShidokuPuzzle, ClueError> {
    let mut cells = [[0u8; 4]; 4];
    let mut n = 0;
    for (pos, ch) in text.chars().enumerate() {
        if ch.is_whitespace() {
            continue;
        }
        let v = match ch {
            '.' => 0,
            '1'..='4' => ch as u8 - b'0',
            _ => {
                return Err(ClueError::Character {
                    position: pos + 1,
                    ch,
                })
            }
        };
        if n < 16 {
            cells[n / 4][n % 4] = v;
        }
        n += 1;
    }
    if n != 16 {
        return Err(ClueError::Length(n));
    }
    Ok(ShidokuPuzzle { cells })
}

/// 1-based variable index of "cell (row, col) holds value", all arguments
/// 1-based.
pub fn shidoku_var(row: usize, col: usize, value: usize) -> usize {
    ((row - 1) * 4 + (col - 1)) * 4 + value
}

fn cell_var(ring: &Ring, row: usize, col: usize, value: usize) -> Monomial {
    ring.var(shidoku_var(row + 1, col + 1, value) - 1)
}

/// One-hot encoding of a Shidoku puzzle over 64 variables `x1..x64`.
///
/// Generators, in order and without repeats: per-cell parity
/// `sum_v x_{c,v} + 1`; per-cell pairwise products `x_{c,v} x_{c,v'}`; for
/// every row, column and block and every value, the product over each pair of
/// distinct cells; one `x + 1` per clue. The empty puzzle gives 336
/// generators.
pub fn encode_shidoku(puzzle: &ShidokuPuzzle) -> (Ring, Vec<Polynomial>) {
    let ring = Ring::new(64).expect("64 variables fit in a word");
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |f: Polynomial| {
        if seen.insert(f.clone()) {
            gens.push(f);
        }
    };

    for r in 0..4 {
        for c in 0..4 {
            let mut parity: Vec<Monomial> = (1..=4).map(|v| cell_var(&ring, r, c, v)).collect();
            parity.push(Monomial::ONE);
            push(Polynomial::from_terms(parity));
        }
    }
    for r in 0..4 {
        for c in 0..4 {
            for v in 1..=4 {
                for w in v + 1..=4 {
                    push(Polynomial::from_monomial(
                        cell_var(&ring, r, c, v).mul(cell_var(&ring, r, c, w)),
                    ));
                }
            }
        }
    }
    let rows = (0..4).map(|r| [(r, 0), (r, 1), (r, 2), (r, 3)]);
    let cols = (0..4).map(|c| [(0, c), (1, c), (2, c), (3, c)]);
    let units: Vec<[(usize, usize); 4]> = rows.chain(cols).chain(BLOCKS).collect();
    for unit in &units {
        for v in 1..=4 {
            for a in 0..4 {
                for b in a + 1..4 {
                    let (ra, ca) = unit[a];
                    let (rb, cb) = unit[b];
                    push(Polynomial::from_monomial(
                        cell_var(&ring, ra, ca, v).mul(cell_var(&ring, rb, cb, v)),
                    ));
                }
            }
        }
    }
    for (r, c, v) in puzzle.clues() {
        push(Polynomial::from_terms([
            cell_var(&ring, r - 1, c - 1, v as usize),
            Monomial::ONE,
        ]));
    }
    (ring, gens)
}

/// The one-hot point of a completely filled grid.
pub fn shidoku_point(grid: &ShidokuGrid, ring: &Ring) -> Point {
    let mut bits = 0;
    for (r, row) in grid.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            let v = v as usize;
            if v != 0 {
                bits |= cell_var(ring, r, c, v).mask();
            }
        }
    }
    Point(bits)
}

/// Reads a grid back from a point, if every cell has exactly one value set.
pub fn decode_shidoku_point(point: Point, ring: &Ring) -> Option<ShidokuGrid> {
    let mut grid = [[0u8; 4]; 4];
    for (r, row) in grid.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let mut set = (1..=4).filter(|&v| point.bits() & cell_var(ring, r, c, v).mask() != 0);
            let v = set.next()?;
            if set.next().is_some() {
                return None;
            }
            *cell = v as u8;
        }
    }
    Some(grid)
}

/// When the basis is the maximal ideal of a single point (`x_i` or `x_i + 1`
/// for every variable), returns that point.
pub fn linear_basis_point(gb: &GroebnerBasis) -> Option<Point> {
    let ring = gb.ring();
    if gb.len() != ring.nvars() {
        return None;
    }
    let mut bits = 0u64;
    let mut vars = 0u64;
    for f in gb.elements() {
        let lt = f.leading_term()?;
        if lt.degree() != 1 || f.len() > 2 {
            return None;
        }
        if f.len() == 2 {
            if !f.terms()[1].is_one() {
                return None;
            }
            bits |= lt.mask();
        }
        vars |= lt.mask();
    }
    (vars == ring.full_mask()).then_some(Point(bits))
}

/// A Boolean dynamical system `x_i <- f_i(x)`. Variables without an update
/// keep their value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanModel {
    ring: Ring,
    updates: Vec<(usize, Polynomial)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("update target {0} is outside the ring")]
    TargetOutOfRange(usize),
    #[error("variable {0} is updated more than once")]
    DuplicateTarget(usize),
    #[error("update for variable {0} uses variables outside the ring")]
    ForeignPolynomial(usize),
}

impl BooleanModel {
    pub fn new(ring: Ring, updates: Vec<(usize, Polynomial)>) -> Result<Self, ModelError> {
        let mut seen = vec![false; ring.nvars()];
        for (target, f) in &updates {
            if *target >= ring.nvars() {
                return Err(ModelError::TargetOutOfRange(*target));
            }
            if std::mem::replace(&mut seen[*target], true) {
                return Err(ModelError::DuplicateTarget(*target));
            }
            if !ring.contains(f) {
                return Err(ModelError::ForeignPolynomial(*target));
            }
        }
        Ok(BooleanModel { ring, updates })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `(target variable index, update polynomial)`, 0-based targets.
    pub fn updates(&self) -> &[(usize, Polynomial)] {
        &self.updates
    }

    /// One synchronous step of the update map.
    pub fn step(&self, state: Point) -> Point {
        let mut next = state.bits();
        for (target, f) in &self.updates {
            let bit = self.ring.var(*target).mask();
            if f.eval(state) {
                next |= bit;
            } else {
                next &= !bit;
            }
        }
        Point(next)
    }
}

/// Generators `f_i + x_i` whose common zeros are the fixed points of the
/// model. Identity updates contribute nothing and are skipped.
pub fn fixed_point_ideal(model: &BooleanModel) -> Vec<Polynomial> {
    model
        .updates
        .iter()
        .map(|(i, f)| f.add(&Polynomial::from_monomial(model.ring.var(*i))))
        .filter(|g| !g.is_zero())
        .collect()
}

/// Parses a model file: a ring header followed by lines `name = polynomial`.
pub fn parse_model(text: &str) -> Result<BooleanModel, ParseError> {
    let (ring, lines) = split_header(text)?;
    let mut updates = Vec::with_capacity(lines.len());
    let mut seen = vec![false; ring.nvars()];
    for (lineno, line) in lines {
        let Some((lhs, rhs)) = line.split_once('=') else {
            return Err(ParseError::new(lineno, 1, ParseErrorKind::ExpectedUpdate));
        };
        let name = lhs.trim();
        let col = lhs.len() - lhs.trim_start().len() + 1;
        if name.is_empty() {
            return Err(ParseError::new(lineno, col, ParseErrorKind::ExpectedUpdate));
        }
        let target = ring.index_of(name).ok_or_else(|| {
            ParseError::new(
                lineno,
                col,
                ParseErrorKind::UnknownVariable(name.to_string()),
            )
        })?;
        if std::mem::replace(&mut seen[target], true) {
            return Err(ParseError::new(
                lineno,
                col,
                ParseErrorKind::DuplicateTarget(name.to_string()),
            ));
        }
        let offset = lhs.chars().count() + 1;
        let f = parse_poly_at(rhs, &ring, lineno, offset)?;
        updates.push((target, f));
    }
    Ok(BooleanModel { ring, updates })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomIdealParams {
    pub nvars: usize,
    pub npolys: usize,
    pub max_terms: usize,
    pub max_degree: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("variable count must be in 1..={MAX_VARS}, got {0}")]
    Vars(usize),
    #[error("polynomial count must be positive")]
    Polys,
    #[error("maximum term count must be positive")]
    Terms,
    #[error("maximum degree must be in 1..={nvars}, got {max_degree}")]
    Degree { max_degree: usize, nvars: usize },
}

impl RandomIdealParams {
    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.nvars == 0 || self.nvars > MAX_VARS {
            return Err(ParamsError::Vars(self.nvars));
        }
        if self.npolys == 0 {
            return Err(ParamsError::Polys);
        }
        if self.max_terms == 0 {
            return Err(ParamsError::Terms);
        }
        if self.max_degree == 0 || self.max_degree > self.nvars {
            return Err(ParamsError::Degree {
                max_degree: self.max_degree,
                nvars: self.nvars,
            });
        }
        Ok(())
    }
}

/// Uniform integer in `0..n` from SplitMix64 output, by rejecting the
/// `2^64 mod n` smallest outputs and reducing the rest modulo `n`.
fn below(rng: &mut SplitMix64, n: u64) -> u64 {
    debug_assert!(n > 0);
    let threshold = n.wrapping_neg() % n;
    loop {
        let x = rng.next_u64();
        if x >= threshold {
            return x % n;
        }
    }
}

/// Seeded random ideal. The output is a pure function of `params`:
///
/// 1. The generator is SplitMix64 with its state initialised to `seed`.
///    Integers in `0..n` are drawn with [`below`].
/// 2. For each polynomial, draw `k = 1 + below(max_terms)`; then `k` times draw
///    a degree `d = below(max_degree + 1)` and build a monomial by drawing
///    variable indices `below(nvars)` until `d` distinct variables are set.
/// 3. The polynomial is the set (not the F2 sum) of the drawn monomials, so
///    it has between 1 and `k` terms and is never zero.
pub fn random_ideal(params: &RandomIdealParams) -> Result<(Ring, Vec<Polynomial>), ParamsError> {
    params.validate()?;
    let ring = Ring::new(params.nvars).expect("validated variable count");
    let mut rng = SplitMix64::seed_from_u64(params.seed);
    let mut polys = Vec::with_capacity(params.npolys);
    for _ in 0..params.npolys {
        let k = 1 + below(&mut rng, params.max_terms as u64);
        let mut terms = Vec::with_capacity(k as usize);
        for _ in 0..k {
            let d = below(&mut rng, params.max_degree as u64 + 1) as u32;
            let mut mask = 0u64;
            while mask.count_ones() < d {
                let i = below(&mut rng, params.nvars as u64) as usize;
                mask |= ring.var(i).mask();
            }
            terms.push(Monomial(mask));
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        terms.dedup();
        polys.push(Polynomial::from_sorted_terms(terms));
    }
    Ok((ring, polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::render_poly;

    #[test]
    fn variable_index_formula() {
        assert_eq!(shidoku_var(1, 1, 1), 1);
        assert_eq!(shidoku_var(1, 1, 4), 4);
        assert_eq!(shidoku_var(1, 2, 1), 5);
        assert_eq!(shidoku_var(4, 4, 4), 64);
    }

    #[test]
    fn empty_shidoku_generators() {
        let (ring, gens) = encode_shidoku(&ShidokuPuzzle::empty());
        assert_eq!(ring.nvars(), 64);
        assert_eq!(gens.len(), 336);
        assert!(gens.iter().all(|g| g.degree() <= Some(2)));
        let parity = gens.iter().filter(|g| g.len() == 5).count();
        assert_eq!(parity, 16);
    }

    #[test]
    fn clue_adds_one_generator() {
        let mut p = ShidokuPuzzle::empty();
        p.set(1, 1, 1);
        let (ring, gens) = encode_shidoku(&p);
        assert_eq!(gens.len(), 337);
        assert_eq!(render_poly(gens.last().unwrap(), &ring), "x1 + 1");
    }

    #[test]
    fn clue_strings() {
        let p = parse_clues("1...\n....\n....\n....").unwrap();
        assert_eq!(p.clues().collect::<Vec<_>>(), vec![(1, 1, 1)]);
        assert_eq!(
            parse_clues("................").unwrap(),
            ShidokuPuzzle::empty()
        );
        assert_eq!(parse_clues("..............."), Err(ClueError::Length(15)));
        assert_eq!(parse_clues("................."), Err(ClueError::Length(17)));
        assert_eq!(
            parse_clues("..5............."),
            Err(ClueError::Character {
                position: 3,
                ch: '5'
            })
        );
        assert_eq!(p.to_string(), "1...............");
    }

    #[test]
    fn point_round_trip() {
        let grid = [[1, 2, 3, 4], [3, 4, 1, 2], [2, 1, 4, 3], [4, 3, 2, 1]];
        let ring = Ring::new(64).unwrap();
        let p = shidoku_point(&grid, &ring);
        assert_eq!(p.bits().count_ones(), 16);
        assert_eq!(decode_shidoku_point(p, &ring), Some(grid));
        assert_eq!(decode_shidoku_point(Point(0), &ring), None);
        assert_eq!(decode_shidoku_point(Point(p.bits() | 0b11), &ring), None);
    }

    #[test]
    fn fixed_point_generators() {
        let m = parse_model("ring 2\nx1 = x2\nx2 = x1\n").unwrap();
        assert_eq!(m.updates().len(), 2);
        let gens = fixed_point_ideal(&m);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0], gens[1]);

        let m = parse_model("ring 2\nx1 = x1\n").unwrap();
        assert!(fixed_point_ideal(&m).is_empty());

        let m = parse_model("ring 2\nx1 = x1*x2\nx2 = x1\n").unwrap();
        let rendered: Vec<_> = fixed_point_ideal(&m)
            .iter()
            .map(|g| render_poly(g, m.ring()))
            .collect();
        assert_eq!(rendered, ["x1*x2 + x1", "x1 + x2"]);
    }

    #[test]
    fn model_steps() {
        let m = parse_model("ring 3 : a b c\na = b*c\nb = a + 1\n").unwrap();
        let r = m.ring().clone();
        // c has no update and keeps its value
        assert_eq!(m.step(r.point([1, 2])), r.point([0, 1, 2]));
        assert_eq!(m.step(r.point([0, 1])), r.point([]));
        assert_eq!(m.step(r.point([])), r.point([1]));
    }

    #[test]
    fn model_errors() {
        let e = parse_model("ring 2\nx1 = x2\nx1 = 1\n").unwrap_err();
        assert_eq!(
            (e.line, e.kind),
            (3, ParseErrorKind::DuplicateTarget("x1".into()))
        );
        let e = parse_model("ring 2\nx3 = x1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("x3".into()));
        let e = parse_model("ring 2\nx1 = x1 + x9\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));
        let e = parse_model("ring 2\nx1 x2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ExpectedUpdate);
        assert!(parse_model("ring 2\nx1 = \n").is_err());
        assert!(matches!(
            BooleanModel::new(Ring::new(2).unwrap(), vec![(2, Polynomial::one())]),
            Err(ModelError::TargetOutOfRange(2))
        ));
    }

    #[test]
    fn random_ideals_are_deterministic_and_bounded() {
        let params = RandomIdealParams {
            nvars: 12,
            npolys: 20,
            max_terms: 5,
            max_degree: 3,
            seed: 42,
        };
        let (ring, a) = random_ideal(&params).unwrap();
        let (_, b) = random_ideal(&params).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        for f in &a {
            assert!(!f.is_zero());
            assert!(f.len() <= 5);
            assert!(f.degree().unwrap() <= 3);
            assert!(ring.contains(f));
        }
        let (_, c) = random_ideal(&RandomIdealParams { seed: 43, ..params }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn linear_random_ideals() {
        let params = RandomIdealParams {
            nvars: 6,
            npolys: 10,
            max_terms: 4,
            max_degree: 1,
            seed: 1,
        };
        let (_, polys) = random_ideal(&params).unwrap();
        assert!(polys.iter().all(|f| f.degree().unwrap() <= 1));
    }

    #[test]
    fn random_params_validation() {
        let ok = RandomIdealParams {
            nvars: 4,
            npolys: 1,
            max_terms: 1,
            max_degree: 1,
            seed: 0,
        };
        assert!(ok.validate().is_ok());
        assert_eq!(
            RandomIdealParams { nvars: 0, ..ok }.validate(),
            Err(ParamsError::Vars(0))
        );
        assert_eq!(
            RandomIdealParams {
                nvars: 65,
                max_degree: 1,
                ..ok
            }
            .validate(),
            Err(ParamsError::Vars(65))
        );
        assert_eq!(
            RandomIdealParams { npolys: 0, ..ok }.validate(),
            Err(ParamsError::Polys)
        );
        assert_eq!(
            RandomIdealParams { max_terms: 0, ..ok }.validate(),
            Err(ParamsError::Terms)
        );
        assert!(RandomIdealParams {
            max_degree: 5,
            ..ok
        }
        .validate()
        .is_err());
    }

    #[test]
    fn splitmix_reference_output() {
        // first output of the reference splitmix64.c seeded with 1477776061723855037
        let mut rng = SplitMix64::seed_from_u64(1477776061723855037);
        assert_eq!(rng.next_u64(), 1985237415132408290);
    }
}
