//! The unshuffling coproduct Δ and its dual, the shuffle product of
//! permutations, with exact `u64` coefficients.
//!
//! `Δ(π)` sums `STD(π|P₁) ⊗ STD(π|P₂)` over ordered splits `P₁ ⊔ P₂` of the
//! positions of `π`. The shuffle product is defined by duality: the
//! coefficient of `π` in `σ ⧢ ν` is the coefficient of `σ ⊗ ν` in `Δ(π)`.
//! [`shuffle`] does not go through Δ; it places the letters of both factors
//! directly so that duality stays something to test.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::perm::{standardize, Letter, Permutation};
use crate::{Error, Result};

/// Largest size for which subsets of positions are enumerated with a `u64` mask.
const MAX_MASK_BITS: usize = 63;

/// The symmetries that are algebra (and coalgebra) endomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Morphism {
    Mirror,
    Complement,
    Inverse,
}

impl Morphism {
    pub const ALL: [Morphism; 3] = [Morphism::Mirror, Morphism::Complement, Morphism::Inverse];

    pub fn apply(self, p: &Permutation) -> Permutation {
        match self {
            Morphism::Mirror => p.mirror(),
            Morphism::Complement => p.complement(),
            Morphism::Inverse => p.inverse(),
        }
    }
}

fn add_checked<K: Ord>(terms: &mut BTreeMap<K, u64>, key: K, coef: u64) -> Result<()> {
    if coef == 0 {
        return Ok(());
    }
    let slot = terms.entry(key).or_insert(0);
    *slot = slot.checked_add(coef).ok_or(Error::Overflow)?;
    Ok(())
}

/// A linear combination of tensors `σ ⊗ ν` with positive coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorExpansion {
    terms: BTreeMap<(Permutation, Permutation), u64>,
}

impl TensorExpansion {
    /// Merges repeated keys additively and drops zero coefficients.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((Permutation, Permutation), u64)>,
    {
        let mut out = TensorExpansion::default();
        for (key, coef) in terms {
            add_checked(&mut out.terms, key, coef)?;
        }
        Ok(out)
    }

    /// Coefficient of `left ⊗ right`, zero when absent.
    pub fn coefficient(&self, left: &Permutation, right: &Permutation) -> u64 {
        // BTreeMap<(A, B), _> cannot be probed with borrowed halves.
        self.terms.get(&(left.clone(), right.clone())).copied().unwrap_or(0)
    }

    /// Terms in lexicographic order of `(left, right)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Permutation, u64)> + '_ {
        self.terms.iter().map(|((l, r), &c)| (l, r, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients, `None` on overflow.
    pub fn total(&self) -> Option<u64> {
        self.terms.values().try_fold(0u64, |acc, &c| acc.checked_add(c))
    }

    /// `(φ ⊗ φ)` applied termwise.
    pub fn apply_morphism(&self, phi: Morphism) -> Result<Self> {
        Self::from_terms(self.terms.iter().map(|((l, r), &c)| ((phi.apply(l), phi.apply(r)), c)))
    }

    /// Swaps the two tensor factors of every term.
    pub fn flipped(&self) -> Self {
        TensorExpansion { terms: self.terms.iter().map(|((l, r), &c)| ((r.clone(), l.clone()), c)).collect() }
    }
}

/// A linear combination of permutations with positive coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShuffleExpansion {
    terms: BTreeMap<Permutation, u64>,
}

impl ShuffleExpansion {
    /// `1 · p`
    pub fn single(p: Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, 1);
        ShuffleExpansion { terms }
    }

    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Permutation, u64)>,
    {
        let mut out = ShuffleExpansion::default();
        for (key, coef) in terms {
            add_checked(&mut out.terms, key, coef)?;
        }
        Ok(out)
    }

    pub fn coefficient(&self, p: &Permutation) -> u64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    /// Terms in lexicographic order of the permutation.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, u64)> + '_ {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> Option<u64> {
        self.terms.values().try_fold(0u64, |acc, &c| acc.checked_add(c))
    }

    pub fn apply_morphism(&self, phi: Morphism) -> Result<Self> {
        Self::from_terms(self.terms.iter().map(|(p, &c)| (phi.apply(p), c)))
    }

    /// Bilinear extension of [`shuffle`].
    pub fn mul(&self, other: &ShuffleExpansion) -> Result<Self> {
        let mut out = ShuffleExpansion::default();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let scale = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                for (p, c) in shuffle(a, b)?.terms {
                    add_checked(&mut out.terms, p, c.checked_mul(scale).ok_or(Error::Overflow)?)?;
                }
            }
        }
        Ok(out)
    }
}

/// Iterates the `k`-subsets of `0..n` as bitmasks, in increasing numeric order.
pub(crate) struct Combinations {
    next: Option<u64>,
    limit: u64,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        debug_assert!(n <= MAX_MASK_BITS && k <= n);
        let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
        Combinations { next: Some(first), limit: 1u64 << n }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            // Gosper's hack.
            let c = current & current.wrapping_neg();
            let r = current + c;
            let candidate = (((r ^ current) >> 2) / c) | r;
            (candidate < self.limit).then_some(candidate)
        };
        Some(current)
    }
}

fn check_mask_size(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_MASK_BITS {
        return Err(Error::ResourceLimit { what, size: n, limit: MAX_MASK_BITS });
    }
    Ok(())
}

/// `Δ(p)`: one term per ordered split of the positions of `p`.
pub fn coproduct(p: &Permutation) -> Result<TensorExpansion> {
    let n = p.len();
    check_mask_size("coproduct", n)?;
    let letters = p.letters();
    let mut out = TensorExpansion::default();
    let mut left: Vec<Letter> = Vec::with_capacity(n);
    let mut right: Vec<Letter> = Vec::with_capacity(n);
    for mask in 0..1u64 << n {
        left.clear();
        right.clear();
        for (i, &l) in letters.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l)
            } else {
                right.push(l)
            }
        }
        let key = (standardize(&left)?, standardize(&right)?);
        add_checked(&mut out.terms, key, 1)?;
    }
    Ok(out)
}

/// `a ⧢ b`, computed by choosing which positions and which values of the
/// result carry `a`; the rest carry `b`. Each choice yields one result and,
/// for a fixed result, distinct choices are distinct splits `(P₁, P₂)`.
pub fn shuffle(a: &Permutation, b: &Permutation) -> Result<ShuffleExpansion> {
    let (m1, m2) = (a.len(), b.len());
    let m = m1 + m2;
    check_mask_size("shuffle", m)?;
    let mut out = ShuffleExpansion::default();
    let mut values_a: Vec<Letter> = Vec::with_capacity(m1);
    let mut values_b: Vec<Letter> = Vec::with_capacity(m2);
    let mut result: Vec<Letter> = alloc::vec![0; m];
    for value_mask in Combinations::new(m, m1) {
        values_a.clear();
        values_b.clear();
        for v in 0..m {
            if value_mask >> v & 1 == 1 {
                values_a.push(v as Letter + 1);
            } else {
                values_b.push(v as Letter + 1);
            }
        }
        for position_mask in Combinations::new(m, m1) {
            let (mut ia, mut ib) = (0, 0);
            for (pos, slot) in result.iter_mut().enumerate() {
                if position_mask >> pos & 1 == 1 {
                    *slot = values_a[a.letters()[ia] as usize - 1];
                    ia += 1;
                } else {
                    *slot = values_b[b.letters()[ib] as usize - 1];
                    ib += 1;
                }
            }
            add_checked(&mut out.terms, Permutation::from_vec_unchecked(result.clone()), 1)?;
        }
    }
    Ok(out)
}
