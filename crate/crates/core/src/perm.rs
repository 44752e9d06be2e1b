//! Permutations in one-line notation, standardization, the three classical
//! symmetries and pattern involvement.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub type Letter = u32;

/// A permutation of `1..=n` in one-line notation. The empty permutation is
/// valid and plays the role of the unit for the shuffle product.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    letters: Vec<Letter>,
}

impl Permutation {
    /// Validates that `letters` is a rearrangement of `1..=letters.len()`.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let n = letters.len();
        let mut seen = alloc::vec![false; n + 1];
        for &l in &letters {
            let l = l as usize;
            if l == 0 || l > n || seen[l] {
                return Err(Error::NotAPermutation { len: n });
            }
            seen[l] = true;
        }
        Ok(Permutation { letters })
    }

    pub fn from_slice(letters: &[Letter]) -> Result<Self> {
        Self::new(letters.to_vec())
    }

    /// Skips validation; callers guarantee the bijection.
    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(Self::new(letters.clone()).is_ok());
        Permutation { letters }
    }

    pub fn empty() -> Self {
        Permutation { letters: Vec::new() }
    }

    /// `1 2 … n`
    pub fn identity(n: usize) -> Self {
        Permutation { letters: (1..=n as Letter).collect() }
    }

    /// `n … 2 1`
    pub fn decreasing(n: usize) -> Self {
        Permutation { letters: (1..=n as Letter).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// `π(i)` for a 1-based position.
    pub fn get(&self, i: usize) -> Option<Letter> {
        i.checked_sub(1).and_then(|i| self.letters.get(i).copied())
    }

    /// Reads the word right to left.
    pub fn mirror(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Permutation { letters }
    }

    /// `n - π(i) + 1` at every position.
    pub fn complement(&self) -> Self {
        let n = self.len() as Letter;
        Permutation { letters: self.letters.iter().map(|&l| n + 1 - l).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut letters = alloc::vec![0; self.len()];
        for (i, &l) in self.letters.iter().enumerate() {
            letters[l as usize - 1] = i as Letter + 1;
        }
        Permutation { letters }
    }

    /// Letters at the positions of `positions`, in position order.
    pub fn subword(&self, positions: &IndexSet) -> Result<Vec<Letter>> {
        positions
            .positions()
            .iter()
            .map(|&i| self.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.len() }))
            .collect()
    }

    /// The word `u[k]`: every letter incremented by `k`.
    pub fn shifted(&self, k: Letter) -> Vec<Letter> {
        self.letters.iter().map(|&l| l + k).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Space separated letters; the empty permutation renders as nothing.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<Letter>> for Permutation {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self> {
        Permutation::new(letters)
    }
}

impl AsRef<[Letter]> for Permutation {
    fn as_ref(&self) -> &[Letter] {
        &self.letters
    }
}

/// A strictly increasing set of 1-based positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    positions: Vec<usize>,
}

impl IndexSet {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if let Some(&first) = positions.first() {
            if first == 0 {
                return Err(Error::IndexOutOfRange { index: 0, len: 0 });
            }
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing);
        }
        Ok(IndexSet { positions })
    }

    /// `{1, …, n}`
    pub fn full(n: usize) -> Self {
        IndexSet { positions: (1..=n).collect() }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    /// Checks every position lies in `1..=n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.positions.last() {
            Some(&last) if last > n => Err(Error::IndexOutOfRange { index: last, len: n }),
            _ => Ok(()),
        }
    }
}

/// The unique permutation order-isomorphic to a repeat-free word.
pub fn standardize<T: Ord>(word: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    let mut letters = alloc::vec![0; word.len()];
    for (rank, pair) in order.iter().enumerate() {
        letters[*pair] = rank as Letter + 1;
    }
    if let Some(w) = order.windows(2).find(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::DuplicateLetter { position: w[0].max(w[1]) + 1 });
    }
    Ok(Permutation { letters })
}

/// Same relative order at every pair of positions. Quadratic, allocation free;
/// meant for the short words of the square searches.
pub fn order_isomorphic<T: Ord>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (a[i] < a[j]) != (b[i] < b[j]) {
                return false;
            }
        }
    }
    true
}

/// Does `pattern` occur in `text`?
pub fn occurs(pattern: &Permutation, text: &Permutation) -> bool {
    find_occurrence(pattern, text).is_some()
}

/// The lexicographically smallest occurrence of `pattern` in `text`, if any.
///
/// Backtracking over text positions, left to right. Each pattern letter is
/// constrained to the value window between the text letters already matched
/// to its nearest smaller and nearest larger pattern letters, which is enough
/// to guarantee order-isomorphism of the whole occurrence.
pub fn find_occurrence(pattern: &Permutation, text: &Permutation) -> Option<IndexSet> {
    let k = pattern.len();
    let n = text.len();
    if k > n {
        return None;
    }
    let p = pattern.letters();
    // For pattern index j: the earlier index holding the closest smaller value
    // and the earlier index holding the closest larger value.
    let mut below = alloc::vec![None; k];
    let mut above = alloc::vec![None; k];
    for j in 0..k {
        for i in 0..j {
            if p[i] < p[j] && below[j].map_or(true, |b: usize| p[b] < p[i]) {
                below[j] = Some(i);
            }
            if p[i] > p[j] && above[j].map_or(true, |a: usize| p[a] > p[i]) {
                above[j] = Some(i);
            }
        }
    }
    let mut chosen = alloc::vec![0usize; k];
    if extend(0, 0, text.letters(), &below, &above, &mut chosen) {
        Some(IndexSet { positions: chosen.into_iter().map(|t| t + 1).collect() })
    } else {
        None
    }
}

fn extend(
    j: usize,
    start: usize,
    text: &[Letter],
    below: &[Option<usize>],
    above: &[Option<usize>],
    chosen: &mut [usize],
) -> bool {
    let k = chosen.len();
    if j == k {
        return true;
    }
    let last = text.len() - (k - j);
    for t in start..=last {
        let v = text[t];
        if below[j].is_some_and(|b| text[chosen[b]] > v) {
            continue;
        }
        if above[j].is_some_and(|a| text[chosen[a]] < v) {
            continue;
        }
        chosen[j] = t;
        if extend(j + 1, t + 1, text, below, above, chosen) {
            return true;
        }
    }
    false
}

/// True when none of `patterns` occurs in `p`.
pub fn avoids_all(p: &Permutation, patterns: &[Permutation]) -> bool {
    patterns.iter().all(|q| !occurs(q, p))
}

/// Advances `letters` to its lexicographic successor in place. Returns `false`
/// (leaving the slice sorted ascending) once the last arrangement is passed.
pub fn next_permutation(letters: &mut [Letter]) -> bool {
    let n = letters.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && letters[i - 1] >= letters[i] {
        i -= 1;
    }
    if i == 0 {
        letters.reverse();
        return false;
    }
    let mut j = n - 1;
    while letters[j] <= letters[i - 1] {
        j -= 1;
    }
    letters.swap(i - 1, j);
    letters[i..].reverse();
    true
}

/// Every permutation of size `n` in lexicographic order. Materializes the
/// whole list, so only meant for small sizes.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<Letter> = (1..=n as Letter).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation { letters: current.clone() });
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}
