#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use boolgb::encoders::shidoku_point;
use boolgb::{
    solve_shidoku_backtracking, BooleanModel, GroebnerBasis, Point, Polynomial, RandomIdealParams,
    Ring, ShidokuGrid, ShidokuPuzzle,
};
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

pub fn uniform(rng: &mut SplitMix64, lo: usize, hi: usize) -> usize {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

/// Parameters for the random-ideal oracle suite: 2..=10 variables, 1..=6
/// generators, at most 6 terms each.
pub fn suite_params(rng: &mut SplitMix64) -> RandomIdealParams {
    let nvars = uniform(rng, 2, 10);
    RandomIdealParams {
        nvars,
        npolys: uniform(rng, 1, 6),
        max_terms: uniform(rng, 1, 6),
        max_degree: uniform(rng, 1, nvars.min(4)),
        seed: rng.next_u64(),
    }
}

pub fn shuffle<T>(items: &mut [T], rng: &mut SplitMix64) {
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// Fixed points of the update map, by stepping every state once.
pub fn simulate_fixed_points(model: &BooleanModel) -> Vec<Point> {
    let n = model.ring().nvars();
    (0..1u64 << n)
        .map(Point)
        .filter(|&p| model.step(p) == p)
        .collect()
}

/// A random update system over `nvars` variables; each variable gets an
/// update with probability 3/4.
pub fn random_model(nvars: usize, seed: u64) -> BooleanModel {
    let mut r = rng(seed);
    let ring = Ring::new(nvars).unwrap();
    let (_, polys) = boolgb::random_ideal(&RandomIdealParams {
        nvars,
        npolys: nvars,
        max_terms: 4,
        max_degree: nvars.min(3),
        seed,
    })
    .unwrap();
    let updates = polys
        .into_iter()
        .enumerate()
        .filter(|_| !r.next_u64().is_multiple_of(4))
        .collect();
    BooleanModel::new(ring, updates).unwrap()
}

/// Points of the variety of a reduced lex basis, by back-substitution from
/// the last variable to the first. Every element is checked once all of its
/// variables are assigned.
pub fn points_from_basis(gb: &GroebnerBasis) -> Vec<Point> {
    let ring = gb.ring();
    let n = ring.nvars();
    if gb.is_unit() {
        return Vec::new();
    }
    // elements grouped by the 0-based index of their lowest-index variable
    let mut by_var: Vec<Vec<&Polynomial>> = vec![Vec::new(); n];
    for f in gb.elements() {
        let top = 63 - f.support().leading_zeros();
        by_var[ring.index_of_bit(top)].push(f);
    }
    let mut out = Vec::new();
    extend(ring, &by_var, n, 0, &mut out);
    out.sort();
    out
}

fn extend(ring: &Ring, by_var: &[Vec<&Polynomial>], k: usize, bits: u64, out: &mut Vec<Point>) {
    if k == 0 {
        out.push(Point(bits));
        return;
    }
    let i = k - 1;
    for value in [0u64, 1] {
        let b = bits | (value * ring.var(i).mask());
        if by_var[i].iter().all(|f| !f.eval(Point(b))) {
            extend(ring, by_var, i, b, out);
        }
    }
}

/// Number of squarefree monomials divisible by no leading term; for a
/// Boolean ideal this is the size of its variety.
pub fn standard_monomial_count(gb: &GroebnerBasis) -> usize {
    let leads: Vec<u64> = gb
        .elements()
        .iter()
        .map(|f| f.leading_term().unwrap().mask())
        .collect();
    let n = gb.ring().nvars() as u32;
    let mut seen = BTreeSet::new();
    let mut stack = vec![0u64];
    while let Some(m) = stack.pop() {
        if leads.iter().any(|&l| l & !m == 0) || !seen.insert(m) {
            continue;
        }
        for b in 0..n {
            if m & (1 << b) == 0 {
                stack.push(m | 1 << b);
            }
        }
    }
    seen.len()
}

/// Starting from the first solution of the empty grid, drops clues in
/// row-major order whenever the completion stays unique.
pub fn minimal_unique_puzzle() -> (ShidokuPuzzle, ShidokuGrid) {
    let solution = solve_shidoku_backtracking(&ShidokuPuzzle::empty(), 1)[0];
    let mut puzzle = ShidokuPuzzle::from_grid(solution);
    for r in 1..=4 {
        for c in 1..=4 {
            let v = puzzle.get(r, c).unwrap_or(0);
            puzzle.set(r, c, 0);
            if solve_shidoku_backtracking(&puzzle, 2).len() != 1 {
                puzzle.set(r, c, v);
            }
        }
    }
    (puzzle, solution)
}

pub fn solution_points(puzzle: &ShidokuPuzzle, ring: &Ring) -> Vec<Point> {
    let mut pts: Vec<Point> = solve_shidoku_backtracking(puzzle, usize::MAX)
        .iter()
        .map(|g| shidoku_point(g, ring))
        .collect();
    pts.sort();
    pts
}
