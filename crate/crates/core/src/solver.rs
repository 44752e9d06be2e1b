//! Square recognition: a subset oracle, a pruned search for a directed
//! perfect matching with P1 and P2, square roots, symmetry classes and
//! exhaustive counting.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::time::Duration;

use crate::matching::{Arc, DirectedMatching};
use crate::perm::{avoids_all, next_permutation, order_isomorphic, standardize, Letter, Permutation};
use crate::shuffle::{Combinations, Morphism};
use crate::{Error, Result};

pub const DEFAULT_ORACLE_BOUND: usize = 20;
pub const DEFAULT_COUNT_BOUND: usize = 10;

/// A matching with P1 and P2 together with the root it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub matching: DirectedMatching,
    pub root: Permutation,
}

impl SquareWitness {
    fn from_matching(matching: DirectedMatching) -> Self {
        let root = matching.sources_pattern();
        SquareWitness { matching, root }
    }
}

fn check_bound(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::ResourceLimit { what, size, limit });
    }
    Ok(())
}

/// Calls `f` with the two halves of every balanced split of `p` whose first
/// half contains position 1. Stops early when `f` returns `true`.
fn for_each_split(p: &Permutation, mut f: impl FnMut(&[Letter], &[Letter]) -> bool) {
    let n = p.len();
    let half = n / 2;
    let letters = p.letters();
    let mut left = Vec::with_capacity(half);
    let mut right = Vec::with_capacity(half);
    for rest in Combinations::new(n - 1, half - 1) {
        let mask = (rest << 1) | 1;
        left.clear();
        right.clear();
        for (i, &l) in letters.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l)
            } else {
                right.push(l)
            }
        }
        if f(&left, &right) {
            return;
        }
    }
}

/// Tries every split of the positions into two halves and returns a common
/// standardization if one exists.
pub fn is_square_oracle(p: &Permutation, bound: usize) -> Result<Option<Permutation>> {
    check_bound("oracle size", p.len(), bound)?;
    if p.len() % 2 == 1 {
        return Ok(None);
    }
    if p.is_empty() {
        return Ok(Some(Permutation::empty()));
    }
    let mut root = None;
    for_each_split(p, |a, b| {
        if order_isomorphic(a, b) {
            root = standardize(a).ok();
        }
        root.is_some()
    });
    Ok(root)
}

/// Every square root of `p`.
pub fn square_roots(p: &Permutation, bound: usize) -> Result<BTreeSet<Permutation>> {
    check_bound("oracle size", p.len(), bound)?;
    let mut roots = BTreeSet::new();
    if p.len() % 2 == 1 {
        return Ok(roots);
    }
    if p.is_empty() {
        roots.insert(Permutation::empty());
        return Ok(roots);
    }
    for_each_split(p, |a, b| {
        if order_isomorphic(a, b) {
            roots.insert(standardize(a).expect("distinct letters"));
        }
        false
    });
    Ok(roots)
}

/// Receives each complete matching as 0-based `(source, sink)` pairs.
type Visitor<'a> = dyn FnMut(&[(usize, usize)]) -> bool + 'a;

/// Backtracking search for a directed perfect matching with P1 and P2.
///
/// The smallest free position is always matched next, so arcs arrive in
/// order of their left endpoints. P1 then reduces to two local rules: the
/// new right endpoint lies beyond every earlier one, and a new arc that
/// starts inside the previous arc copies its direction. P2 is kept as an
/// order-preserving partial map from source letters to sink letters. The
/// first arc points right, since reversing every arc keeps both properties.
///
/// Buffers are reused across calls.
#[derive(Clone, Debug, Default)]
pub struct MatchingSolver {
    letters: Vec<Letter>,
    used: Vec<bool>,
    /// `(source, sink)`, 0-based.
    arcs: Vec<(usize, usize)>,
}

impl MatchingSolver {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, letters: &[Letter]) {
        self.letters.clear();
        self.letters.extend_from_slice(letters);
        self.arcs.clear();
        self.used.clear();
        self.used.resize(letters.len(), false);
    }

    /// Whether `letters` (assumed a permutation) admits such a matching.
    /// On success the arcs stay available through [`Self::witness`].
    pub fn solve(&mut self, letters: &[Letter]) -> bool {
        self.reset(letters);
        letters.len() % 2 == 0 && self.explore(0, true, &mut |_| true)
    }

    /// Calls `visit` with the 1-based arcs of every matching with P1 and P2,
    /// in both global directions.
    pub fn for_each_solution(&mut self, letters: &[Letter], mut visit: impl FnMut(&[Arc])) {
        self.reset(letters);
        if letters.len() % 2 == 0 {
            self.explore(0, false, &mut |arcs| {
                let arcs: Vec<Arc> = arcs.iter().map(|&(s, t)| Arc::new(s + 1, t + 1)).collect();
                visit(&arcs);
                false
            });
        }
    }

    /// Arcs found by the last successful [`Self::solve`], 1-based.
    pub fn witness(&self) -> Vec<Arc> {
        self.arcs.iter().map(|&(s, t)| Arc::new(s + 1, t + 1)).collect()
    }

    fn p2_admits(&self, source: Letter, sink: Letter) -> bool {
        self.arcs.iter().all(|&(s, t)| (self.letters[s] < source) == (self.letters[t] < sink))
    }

    /// Depth-first search; `visit` is called at every complete matching and
    /// stops the search by returning `true`.
    fn explore(&mut self, from: usize, fix_first: bool, visit: &mut Visitor<'_>) -> bool {
        let n = self.letters.len();
        let Some(p) = (from..n).find(|&i| !self.used[i]) else {
            return visit(&self.arcs);
        };
        // (first admissible partner, forced direction: Some(true) = rightward)
        let (start, forced) = match self.arcs.last() {
            None => (p + 1, fix_first.then_some(true)),
            Some(&(s, t)) => {
                let hi = s.max(t);
                if hi > p {
                    (hi + 1, Some(s < t))
                } else {
                    (p + 1, None)
                }
            }
        };
        for q in start..n {
            for rightward in [true, false] {
                if forced.is_some_and(|f| f != rightward) {
                    continue;
                }
                let (s, t) = if rightward { (p, q) } else { (q, p) };
                if !self.p2_admits(self.letters[s], self.letters[t]) {
                    continue;
                }
                self.arcs.push((s, t));
                self.used[p] = true;
                self.used[q] = true;
                if self.explore(p + 1, fix_first, visit) {
                    return true;
                }
                self.used[p] = false;
                self.used[q] = false;
                self.arcs.pop();
            }
        }
        false
    }
}

/// A witness matching if `p` is a square.
pub fn is_square_matching(p: &Permutation) -> Option<SquareWitness> {
    let mut solver = MatchingSolver::new();
    if !solver.solve(p.letters()) {
        return None;
    }
    let mut arcs = solver.witness();
    arcs.sort_by_key(Arc::lo);
    let matching = DirectedMatching::from_sorted_unchecked(p.clone(), arcs);
    Some(SquareWitness::from_matching(matching))
}

/// Every directed perfect matching on `p` with P1 and P2, from the pruned
/// search.
pub fn square_matchings(p: &Permutation) -> Vec<DirectedMatching> {
    let mut out = Vec::new();
    MatchingSolver::new().for_each_solution(p.letters(), |arcs| {
        let mut arcs = arcs.to_vec();
        arcs.sort_by_key(Arc::lo);
        out.push(DirectedMatching::from_sorted_unchecked(p.clone(), arcs));
    });
    out
}

/// Every directed perfect matching on `p` with P1 and P2, found without any
/// pruning: all matchings in both directions, each checked with the
/// pairwise definitions.
pub fn all_square_matchings(p: &Permutation) -> Vec<DirectedMatching> {
    fn go(p: &Permutation, used: &mut [bool], arcs: &mut Vec<Arc>, out: &mut Vec<DirectedMatching>) {
        let Some(i) = used.iter().position(|u| !u) else {
            let m = DirectedMatching::new(p.clone(), arcs.iter().copied()).expect("perfect by construction");
            if m.satisfies_p1_pairwise() && m.satisfies_p2_pairwise() {
                out.push(m);
            }
            return;
        };
        used[i] = true;
        for j in i + 1..used.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            for arc in [Arc::new(i + 1, j + 1), Arc::new(j + 1, i + 1)] {
                arcs.push(arc);
                go(p, used, arcs, out);
                arcs.pop();
            }
            used[j] = false;
        }
        used[i] = false;
    }
    let mut out = Vec::new();
    if p.len() % 2 == 0 {
        go(p, &mut alloc::vec![false; p.len()], &mut Vec::new(), &mut out);
    }
    out
}

/// The orbit of `p` under mirror, complement and inverse.
pub fn symmetry_orbit(p: &Permutation) -> Vec<Permutation> {
    let mut orbit = alloc::vec![p.clone()];
    let mut i = 0;
    while i < orbit.len() {
        for phi in Morphism::ALL {
            let q = phi.apply(&orbit[i]);
            if !orbit.contains(&q) {
                orbit.push(q);
            }
        }
        i += 1;
    }
    orbit.sort();
    orbit
}

/// Lexicographically smallest element of the orbit.
pub fn symmetry_class_representative(p: &Permutation) -> Permutation {
    symmetry_orbit(p).swap_remove(0)
}

/// Restrictions applied while counting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountFilter {
    /// Only permutations avoiding all of these are counted.
    pub avoid: Vec<Permutation>,
    /// Count orbits under mirror, complement and inverse instead of
    /// permutations. An orbit is counted once when any member passes
    /// `avoid`.
    pub classes: bool,
}

impl CountFilter {
    fn admits(&self, p: &Permutation) -> bool {
        avoids_all(p, &self.avoid)
    }

    /// Whether `p` is the member that stands for its orbit.
    fn is_counted_member(&self, p: &Permutation) -> bool {
        if !self.admits(p) {
            return false;
        }
        !self.classes || symmetry_orbit(p).iter().take_while(|q| *q < p).all(|q| !self.admits(q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    /// `counts[s]` is the count at size `s`.
    pub counts: Vec<u64>,
    pub filter: CountFilter,
    pub elapsed: Option<Duration>,
}

impl CountReport {
    pub fn max_size(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

/// Squares of size `size` whose first letter is `first`, subject to `filter`.
pub fn count_block(size: usize, first: Letter, filter: &CountFilter, solver: &mut MatchingSolver) -> u64 {
    if size % 2 == 1 || first == 0 || first as usize > size {
        return 0;
    }
    let mut letters: Vec<Letter> =
        core::iter::once(first).chain((1..=size as Letter).filter(|&l| l != first)).collect();
    let plain = filter.avoid.is_empty() && !filter.classes;
    let mut count = 0;
    loop {
        let hit = if plain {
            solver.solve(&letters)
        } else {
            let p = Permutation::from_vec_unchecked(letters.clone());
            filter.is_counted_member(&p) && solver.solve(&letters)
        };
        count += u64::from(hit);
        if !next_permutation(&mut letters[1..]) {
            return count;
        }
    }
}

/// Count at a single size, sequentially.
pub fn count_size(size: usize, filter: &CountFilter) -> u64 {
    if size == 0 {
        return u64::from(filter.is_counted_member(&Permutation::empty()));
    }
    let mut solver = MatchingSolver::new();
    (1..=size as Letter).map(|f| count_block(size, f, filter, &mut solver)).sum()
}

/// Counts for every size up to `max_size`, sequentially.
pub fn count_squares(max_size: usize, filter: &CountFilter, bound: usize) -> Result<CountReport> {
    check_bound("count size", max_size, bound)?;
    let counts = (0..=max_size).map(|s| count_size(s, filter)).collect();
    Ok(CountReport { counts, filter: filter.clone(), elapsed: None })
}
