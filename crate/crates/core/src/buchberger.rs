//! Buchberger's algorithm in the Boolean quotient ring.
//!
//! The field polynomials `x_i^2 + x_i` are never stored. Their only effect on
//! the computation is through the S-polynomial of a basis element `g` with
//! `x_i^2 + x_i` where `x_i | lt(g)`, which is multilinear and equals
//! `x_i * tail(g) + lt(g)` in the quotient ring. Pairs with `x_i` not dividing
//! `lt(g)` have coprime leading terms and are never formed.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::ring::{Monomial, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("S-polynomial of the zero polynomial is undefined")]
    ZeroInput,
    #[error("{var} is not a single variable dividing the leading term {lead}")]
    NotFieldPair { var: Monomial, lead: Monomial },
}

/// What a critical pair refers to. Indices point into the working basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    Basis {
        i: usize,
        j: usize,
    },
    /// Basis element `i` against the field polynomial of `var`.
    Field {
        i: usize,
        var: Monomial,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalPair {
    pub kind: PairKind,
    pub lcm_key: Monomial,
    pub degree_key: u32,
}

impl CriticalPair {
    pub fn basis(i: usize, j: usize, basis: &[Polynomial]) -> Self {
        assert_ne!(i, j, "a basis pair needs two distinct elements");
        let (i, j) = (i.min(j), i.max(j));
        let lcm = lead(&basis[i]).lcm(lead(&basis[j]));
        CriticalPair {
            kind: PairKind::Basis { i, j },
            lcm_key: lcm,
            degree_key: lcm.degree(),
        }
    }

    pub fn field(i: usize, var: Monomial, basis: &[Polynomial]) -> Self {
        let lt = lead(&basis[i]);
        debug_assert!(var.degree() == 1 && lt.is_divisible_by(var));
        CriticalPair {
            kind: PairKind::Field { i, var },
            lcm_key: lt,
            degree_key: lt.degree() + 1,
        }
    }
}

fn lead(f: &Polynomial) -> Monomial {
    f.leading_term().expect("basis elements are nonzero")
}

/// S-polynomial of two nonzero Boolean polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GbError> {
    let (lf, lg) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GbError::ZeroInput),
    };
    let lcm = lf.lcm(lg);
    let a = f.mul_monomial(lcm.div_unchecked(lf));
    let b = g.mul_monomial(lcm.div_unchecked(lg));
    Ok(a.add(&b))
}

/// S-polynomial of `g` with the field polynomial `var^2 + var`, computed in
/// the quotient ring as `var * tail(g) + lt(g)`.
pub fn field_s_polynomial(g: &Polynomial, var: Monomial) -> Result<Polynomial, GbError> {
    let lt = g.leading_term().ok_or(GbError::ZeroInput)?;
    if var.degree() != 1 || !lt.is_divisible_by(var) {
        return Err(GbError::NotFieldPair { var, lead: lt });
    }
    Ok(g.tail()
        .mul_monomial(var)
        .add(&Polynomial::from_monomial(lt)))
}

/// Full normal form of `f` modulo `basis`.
///
/// The lex-greatest reducible monomial is always eliminated first, using the
/// first basis element (in slice order) whose leading term divides it.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    Reducer::new(basis.iter().filter(|g| !g.is_zero())).reduce(f)
}

/// Reduction against a fixed list of nonzero polynomials.
struct Reducer<'a> {
    leads: Vec<u64>,
    polys: Vec<&'a Polynomial>,
}

impl<'a> Reducer<'a> {
    fn new<I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().collect();
        let leads = polys.iter().map(|g| lead(g).mask()).collect();
        Reducer { leads, polys }
    }

    fn push(&mut self, g: &'a Polynomial) {
        self.leads.push(lead(g).mask());
        self.polys.push(g);
    }

    #[inline]
    fn divisor_of(&self, t: u64) -> Option<usize> {
        self.leads.iter().position(|&l| l & !t == 0)
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let Some(first) = f
            .terms()
            .iter()
            .position(|t| self.divisor_of(t.mask()).is_some())
        else {
            return f.clone();
        };
        let mut remainder: Vec<Monomial> = f.terms()[..first].to_vec();
        // Pending terms with multiplicity; a term survives when it occurs an
        // odd number of times.
        let mut heap: BinaryHeap<u64> = f.terms()[first..].iter().map(|t| t.mask()).collect();
        while let Some(t) = heap.pop() {
            let mut odd = true;
            while heap.peek() == Some(&t) {
                heap.pop();
                odd = !odd;
            }
            if !odd {
                continue;
            }
            match self.divisor_of(t) {
                None => remainder.push(Monomial(t)),
                Some(k) => {
                    let g = self.polys[k];
                    let q = t ^ self.leads[k];
                    heap.extend(g.terms()[1..].iter().map(|s| s.mask() | q));
                }
            }
        }
        Polynomial::from_sorted_terms(remainder)
    }
}

/// True iff the pair's leading terms are coprime, in which case its
/// S-polynomial reduces to zero and the pair may be skipped.
pub fn criterion1_applies(pair: &CriticalPair, basis: &[Polynomial]) -> bool {
    match pair.kind {
        PairKind::Basis { i, j } => lead(&basis[i]).is_coprime(lead(&basis[j])),
        PairKind::Field { i, var } => lead(&basis[i]).is_coprime(var),
    }
}

/// Basis pairs that have been created but not yet processed or eliminated.
#[derive(Debug, Default, Clone)]
pub struct PendingPairs {
    set: HashSet<(usize, usize)>,
}

impl PendingPairs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.set.insert((i.min(j), i.max(j)));
    }

    pub fn remove(&mut self, i: usize, j: usize) -> bool {
        self.set.remove(&(i.min(j), i.max(j)))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.set.contains(&(i.min(j), i.max(j)))
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// Buchberger's second (chain) criterion for a basis pair `(i, j)`: some other
/// element `k` has a leading term dividing the pair's lcm, and neither `(i, k)`
/// nor `(j, k)` is still pending.
///
/// Field pairs are never eliminated this way.
pub fn chain_criterion_applies(
    pair: &CriticalPair,
    pending: &PendingPairs,
    basis: &[Polynomial],
) -> bool {
    let PairKind::Basis { i, j } = pair.kind else {
        return false;
    };
    basis.iter().enumerate().any(|(k, g)| {
        k != i
            && k != j
            && pair.lcm_key.is_divisible_by(lead(g))
            && !pending.contains(i, k)
            && !pending.contains(j, k)
    })
}

/// Switches for the pair-elimination criteria. Both only prune work; the
/// resulting reduced basis is the same with or without them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbOptions {
    pub criterion1: bool,
    pub chain_criterion: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            criterion1: true,
            chain_criterion: true,
        }
    }
}

impl GbOptions {
    pub fn without_criteria() -> Self {
        GbOptions {
            criterion1: false,
            chain_criterion: false,
        }
    }
}

/// Counters collected during one run.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct GbStats {
    pub basis_pairs: usize,
    pub field_pairs: usize,
    pub criterion1_skipped: usize,
    pub chain_skipped: usize,
    pub reductions: usize,
    pub zero_reductions: usize,
    pub max_basis_len: usize,
}

impl fmt::Display for GbStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "basis pairs: {}, field pairs: {}, skipped by criterion 1: {}, \
             skipped by chain criterion: {}, reductions: {}, reductions to zero: {}, \
             peak basis size: {}",
            self.basis_pairs,
            self.field_pairs,
            self.criterion1_skipped,
            self.chain_skipped,
            self.reductions,
            self.zero_reductions,
            self.max_basis_len
        )
    }
}

/// A reduced lexicographic Gröbner basis, elements sorted by descending
/// leading monomial. The unit ideal is `[1]`, the zero ideal is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    /// Ideal membership.
    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, &self.elements).is_zero()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.elements)
    }
}

/// Reduced lex Gröbner basis of the ideal generated by `generators` in the
/// Boolean quotient ring over `ring`.
pub fn buchberger_gb(generators: &[Polynomial], ring: &Ring) -> GroebnerBasis {
    buchberger_gb_with(generators, ring, GbOptions::default()).0
}

pub fn buchberger_gb_with(
    generators: &[Polynomial],
    ring: &Ring,
    options: GbOptions,
) -> (GroebnerBasis, GbStats) {
    let mut state = State::new(options);
    let unit = state.run(generators);
    let elements = if unit {
        vec![Polynomial::one()]
    } else {
        reduce_basis(state.basis)
    };
    let basis = GroebnerBasis {
        ring: ring.clone(),
        elements,
    };
    (basis, state.stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct QueueKey {
    degree: u32,
    lcm: Monomial,
    seq: u64,
}

struct State {
    options: GbOptions,
    basis: Vec<Polynomial>,
    queue: BinaryHeap<Reverse<(QueueKey, PairKindOrd)>>,
    pending: PendingPairs,
    seq: u64,
    stats: GbStats,
}

/// `PairKind` with an arbitrary total order so it can ride along in the heap;
/// `seq` is unique, so this order is never consulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PairKindOrd(PairKind);

impl PartialOrd for PairKindOrd {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairKindOrd {
    fn cmp(&self, _: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}

impl State {
    fn new(options: GbOptions) -> Self {
        State {
            options,
            basis: Vec::new(),
            queue: BinaryHeap::new(),
            pending: PendingPairs::new(),
            seq: 0,
            stats: GbStats::default(),
        }
    }

    /// Runs the pair loop. Returns true as soon as the ideal is found to be
    /// the unit ideal.
    fn run(&mut self, generators: &[Polynomial]) -> bool {
        for g in generators {
            let h = normal_form(g, &self.basis);
            if h.is_zero() {
                continue;
            }
            if h.is_one() {
                return true;
            }
            self.insert(h);
        }
        while let Some(Reverse((_, PairKindOrd(kind)))) = self.queue.pop() {
            let s = match kind {
                PairKind::Basis { i, j } => {
                    self.pending.remove(i, j);
                    let pair = CriticalPair::basis(i, j, &self.basis);
                    if self.options.chain_criterion
                        && chain_criterion_applies(&pair, &self.pending, &self.basis)
                    {
                        self.stats.chain_skipped += 1;
                        continue;
                    }
                    s_polynomial(&self.basis[i], &self.basis[j])
                }
                PairKind::Field { i, var } => field_s_polynomial(&self.basis[i], var),
            }
            .expect("pairs only reference nonzero basis elements");
            self.stats.reductions += 1;
            let h = Reducer::new(&self.basis).reduce(&s);
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if h.is_one() {
                return true;
            }
            self.insert(h);
        }
        false
    }

    fn insert(&mut self, h: Polynomial) {
        let idx = self.basis.len();
        let lt = lead(&h);
        self.basis.push(h);
        self.stats.max_basis_len = self.basis.len();
        for j in 0..idx {
            let pair = CriticalPair::basis(j, idx, &self.basis);
            self.stats.basis_pairs += 1;
            if self.options.criterion1 && criterion1_applies(&pair, &self.basis) {
                self.stats.criterion1_skipped += 1;
                continue;
            }
            self.pending.insert(j, idx);
            self.enqueue(pair);
        }
        for var in lt.variables() {
            self.stats.field_pairs += 1;
            self.enqueue(CriticalPair::field(idx, var, &self.basis));
        }
    }

    fn enqueue(&mut self, pair: CriticalPair) {
        let key = QueueKey {
            degree: pair.degree_key,
            lcm: pair.lcm_key,
            seq: self.seq,
        };
        self.seq += 1;
        self.queue.push(Reverse((key, PairKindOrd(pair.kind))));
    }
}

/// Turns a Gröbner basis into the reduced one: drops elements whose leading
/// term is a multiple of another's, then interreduces.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| lead(a).cmp(&lead(b)).then_with(|| a.len().cmp(&b.len())));
    let mut minimal: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for g in basis {
        let lt = lead(&g);
        if !minimal.iter().any(|m| lt.is_divisible_by(lead(m))) {
            minimal.push(g);
        }
    }
    interreduce(minimal)
}

/// Repeatedly replaces each element by its normal form modulo the others,
/// dropping zeros, until nothing changes. The result is sorted by descending
/// leading monomial.
pub fn interreduce(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = polys.into_iter().filter(|g| !g.is_zero()).collect();
    loop {
        let mut changed = false;
        let mut idx = 0;
        while idx < polys.len() {
            let mut reducer = Reducer::new(std::iter::empty());
            for (k, g) in polys.iter().enumerate() {
                if k != idx {
                    reducer.push(g);
                }
            }
            let r = reducer.reduce(&polys[idx]);
            if r != polys[idx] {
                changed = true;
                if r.is_zero() {
                    polys.remove(idx);
                    continue;
                }
                polys[idx] = r;
            }
            idx += 1;
        }
        if !changed {
            break;
        }
    }
    polys.sort_by(|a, b| b.cmp(a));
    polys
}

/// Independent Gröbner basis check: every basis S-polynomial and every field
/// S-polynomial must reduce to zero. No pair is skipped.
pub fn is_groebner_basis(polys: &[Polynomial]) -> bool {
    let basis: Vec<&Polynomial> = polys.iter().filter(|g| !g.is_zero()).collect();
    let owned: Vec<Polynomial> = basis.iter().map(|g| (*g).clone()).collect();
    let reducer = Reducer::new(&owned);
    for (i, f) in basis.iter().enumerate() {
        for var in lead(f).variables() {
            let s = field_s_polynomial(f, var).expect("var divides the leading term");
            if !reducer.reduce(&s).is_zero() {
                return false;
            }
        }
        for g in &basis[i + 1..] {
            let s = s_polynomial(f, g).expect("nonzero inputs");
            if !reducer.reduce(&s).is_zero() {
                return false;
            }
        }
    }
    true
}

/// True when no monomial of any element is divisible by the leading term of
/// another element.
pub fn is_reduced(polys: &[Polynomial]) -> bool {
    polys.iter().enumerate().all(|(i, f)| {
        !f.is_zero()
            && polys
                .iter()
                .enumerate()
                .all(|(j, g)| i == j || f.terms().iter().all(|t| !t.is_divisible_by(lead(g))))
    })
}
