//! Shuffles of words, square words, and the correspondence between binary
//! words and permutations avoiding 213 and 231.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::perm::{Letter, Permutation};
use crate::{Error, Result};

pub const DEFAULT_WORD_BOUND: usize = 16;

/// A word over `{0, 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    bits: Vec<u8>,
}

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::NotBinary(b));
        }
        Ok(BinaryWord { bits })
    }

    /// The word whose `i`-th letter is bit `i` of `mask`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        BinaryWord { bits: (0..len).map(|i| (mask >> i & 1) as u8).collect() }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `|u|₀`
    pub fn zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    /// `|u|₁`
    pub fn ones(&self) -> usize {
        self.len() - self.zeros()
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BinaryWord::new(s.bytes().map(|b| b.wrapping_sub(b'0')).collect())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
        f.write_str(&s)
    }
}

/// Is `u` in `v1 ⧢ v2`? Quadratic dynamic program over prefixes.
pub fn shuffle_member<T: PartialEq>(u: &[T], v1: &[T], v2: &[T]) -> Result<bool> {
    let expected = v1.len() + v2.len();
    if u.len() != expected {
        return Err(Error::LengthMismatch { expected, found: u.len() });
    }
    // row[j]: u[..i + j] is a shuffle of v1[..i] and v2[..j]
    let mut row = alloc::vec![false; v2.len() + 1];
    row[0] = true;
    for j in 1..=v2.len() {
        row[j] = row[j - 1] && v2[j - 1] == u[j - 1];
    }
    for i in 1..=v1.len() {
        row[0] = row[0] && v1[i - 1] == u[i - 1];
        for j in 1..=v2.len() {
            let from_v1 = row[j] && v1[i - 1] == u[i + j - 1];
            let from_v2 = row[j - 1] && v2[j - 1] == u[i + j - 1];
            row[j] = from_v1 || from_v2;
        }
    }
    Ok(row[v2.len()])
}

/// Returns `Some(v)` with `u ∈ v ⧢ v`, or `None` when `u` is not a square.
///
/// Enumerates the position sets `P ∋ 1` of the first copy of `v` left to
/// right and abandons a branch as soon as the letters placed in the second
/// copy stop agreeing with the first. Failed `(position, unmatched suffix of
/// the first copy)` states are remembered so that each is explored once.
pub fn is_square_word<T: Ord + Clone>(u: &[T]) -> Option<Vec<T>> {
    if u.len() % 2 == 1 {
        return None;
    }
    // Every letter must occur an even number of times.
    let mut sorted: Vec<&T> = u.iter().collect();
    sorted.sort();
    if sorted.chunks(2).any(|c| c[0] != c[1]) {
        return None;
    }
    let mut search = WordSquareSearch { u, first: Vec::new(), matched: 0, failed: BTreeSet::new() };
    if search.run(0) {
        Some(search.first.iter().map(|&i| u[i].clone()).collect())
    } else {
        None
    }
}

struct WordSquareSearch<'a, T> {
    u: &'a [T],
    /// Positions of the first copy so far.
    first: Vec<usize>,
    /// How many letters of the first copy the second copy has consumed.
    matched: usize,
    failed: BTreeSet<(usize, Vec<T>)>,
}

impl<T: Ord + Clone> WordSquareSearch<'_, T> {
    fn pending(&self) -> Vec<T> {
        self.first[self.matched..].iter().map(|&i| self.u[i].clone()).collect()
    }

    fn run(&mut self, i: usize) -> bool {
        let half = self.u.len() / 2;
        if i == self.u.len() {
            return self.matched == half && self.first.len() == half;
        }
        let key = (i, self.pending());
        if self.failed.contains(&key) {
            return false;
        }
        if self.matched < self.first.len() && self.u[self.first[self.matched]] == self.u[i] {
            self.matched += 1;
            if self.run(i + 1) {
                return true;
            }
            self.matched -= 1;
        }
        if self.first.len() < half {
            self.first.push(i);
            if self.run(i + 1) {
                return true;
            }
            self.first.pop();
        }
        self.failed.insert(key);
        false
    }
}

/// Zeros become `1..k` left to right, ones become `k+1..n` right to left.
pub fn bin_to_perm(u: &BinaryWord) -> Permutation {
    let n = u.len();
    let k = u.zeros();
    let mut letters = alloc::vec![0 as Letter; n];
    let mut next_low = 1 as Letter;
    for (slot, &b) in letters.iter_mut().zip(u.bits()) {
        if b == 0 {
            *slot = next_low;
            next_low += 1;
        }
    }
    let mut next_high = k as Letter + 1;
    for (slot, &b) in letters.iter_mut().zip(u.bits()).rev() {
        if b == 1 {
            *slot = next_high;
            next_high += 1;
        }
    }
    Permutation::from_vec_unchecked(letters)
}

/// The preimage of `p` under [`bin_to_perm`] with an even number of zeros and
/// an even number of ones.
///
/// Each letter of a (213, 231)-avoider is either the smallest or the largest
/// value not yet read; only the last letter is both, and parity decides it.
pub fn perm_to_bin(p: &Permutation) -> Result<BinaryWord> {
    let n = p.len();
    if n % 2 == 1 {
        return Err(Error::OddLength(n));
    }
    if n == 0 {
        return Ok(BinaryWord::default());
    }
    let (mut low, mut high) = (1 as Letter, n as Letter);
    let mut bits = Vec::with_capacity(n);
    for (i, &l) in p.letters()[..n - 1].iter().enumerate() {
        if l == low {
            bits.push(0);
            low += 1;
        } else if l == high {
            bits.push(1);
            high -= 1;
        } else {
            return Err(Error::NotInImage { position: i + 1 });
        }
    }
    let zeros = bits.iter().filter(|&&b| b == 0).count();
    bits.push(if zeros % 2 == 1 { 0 } else { 1 });
    Ok(BinaryWord { bits })
}

/// Number of square binary words of each length `0..=max_length`.
pub fn count_square_binary_words(max_length: usize, bound: usize) -> Result<Vec<u64>> {
    if max_length > bound {
        return Err(Error::ResourceLimit { what: "square binary word count", size: max_length, limit: bound });
    }
    if max_length > 62 {
        return Err(Error::ResourceLimit { what: "square binary word count", size: max_length, limit: 62 });
    }
    let mut counts = Vec::with_capacity(max_length + 1);
    for len in 0..=max_length {
        if len % 2 == 1 {
            counts.push(0);
            continue;
        }
        let mut count = 0u64;
        for mask in 0..1u64 << len {
            if is_square_word(BinaryWord::from_mask(mask, len).bits()).is_some() {
                count += 1;
            }
        }
        counts.push(count);
    }
    Ok(counts)
}
