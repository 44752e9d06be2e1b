//! The permutation `μ(π, σ)` that is a square iff `σ` occurs in `π`, and the
//! square witness for `μ` built from an occurrence.
//!
//! `μ` is the concatenation of twelve gadgets. Each gadget is a base
//! sequence lifted by a value offset (`u[y]` adds `y` to every letter):
//!
//! | gadget | base            | offset                            |
//! |--------|-----------------|-----------------------------------|
//! | ν₁     | ↗N₁             | 2N₂+2N₃+2N₄+2n+2k+4               |
//! | ν₂     | ↘N₂             | N₂                                |
//! | ν′₁    | ↗N₁             | N₁+2N₂+2N₃+2N₄+2n+2k+4            |
//! | ν₃     | ↗N₃             | 2N₂+2N₄+2n+2k+4                   |
//! | σ′     | (k+1) σ (k+2)   | 2N₂+N₄+2n+k+2                     |
//! | ν₄     | ↘N₄             | 2N₂+N₄+2n+2k+4                    |
//! | ν′₂    | ↘N₂             | 0                                 |
//! | ν′₃    | ↗N₃             | 2N₂+N₃+2N₄+2n+2k+4                |
//! | π′     | (n+1) π (n+2)   | 2N₂+N₄+n+k                        |
//! | ν′₄    | ↘N₄             | 2N₂                               |
//! | π″     | π               | 2N₂+N₄+k                          |
//! | σ″     | σ               | 2N₂+N₄                            |
//!
//! The value bands, bottom to top, are ν′₂ ν₂ ν′₄ σ″ π″ π′ σ′ ν₄ ν₃ ν′₃ ν₁
//! ν′₁, so `μ` is a permutation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::matching::{Arc, DirectedMatching};
use crate::perm::{standardize, IndexSet, Letter, Permutation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReductionConstants {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
}

impl ReductionConstants {
    /// `[N₁, N₂, N₃, N₄]`.
    pub fn as_array(&self) -> [usize; 4] {
        [self.n1, self.n2, self.n3, self.n4]
    }

    /// `2N₁ + 2N₂ + 2N₃ + 2N₄ + 2n + 2k + 4`.
    pub fn mu_len(&self, n: usize, k: usize) -> usize {
        2 * (self.n1 + self.n2 + self.n3 + self.n4) + 2 * n + 2 * k + 4
    }

    /// Indices `i` (1-based) for which `Nᵢ > Σ_{j>i} 2Nⱼ + 2n + 2k + 4`
    /// fails.
    pub fn dominance_failures(&self, n: usize, k: usize) -> Vec<usize> {
        let c = self.as_array();
        (0..4)
            .filter(|&i| {
                let rest: usize = c[i + 1..].iter().map(|x| 2 * x).sum();
                c[i] <= rest + 2 * n + 2 * k + 4
            })
            .map(|i| i + 1)
            .collect()
    }
}

pub fn reduction_constants(n: usize, k: usize) -> ReductionConstants {
    let base = 2 * n + 2 * k + 4;
    let n4 = 2 * (2 * n + k + 2) + 3;
    let n3 = 2 * (2 * n4 + base) + 3;
    let n2 = 2 * (2 * n3 + 2 * n4 + base) + 3;
    let n1 = 2 * (2 * n2 + 2 * n3 + 2 * n4 + base) + 3;
    ReductionConstants { n1, n2, n3, n4 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gadget {
    Nu1,
    Nu2,
    Nu1Prime,
    Nu3,
    SigmaPrime,
    Nu4,
    Nu2Prime,
    Nu3Prime,
    PiPrime,
    Nu4Prime,
    PiSecond,
    SigmaSecond,
}

impl Gadget {
    /// Left-to-right order in `μ`.
    pub const ORDER: [Gadget; 12] = [
        Gadget::Nu1,
        Gadget::Nu2,
        Gadget::Nu1Prime,
        Gadget::Nu3,
        Gadget::SigmaPrime,
        Gadget::Nu4,
        Gadget::Nu2Prime,
        Gadget::Nu3Prime,
        Gadget::PiPrime,
        Gadget::Nu4Prime,
        Gadget::PiSecond,
        Gadget::SigmaSecond,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Gadget::Nu1 => "nu1",
            Gadget::Nu2 => "nu2",
            Gadget::Nu1Prime => "nu1_p",
            Gadget::Nu3 => "nu3",
            Gadget::SigmaPrime => "sigma_p",
            Gadget::Nu4 => "nu4",
            Gadget::Nu2Prime => "nu2_p",
            Gadget::Nu3Prime => "nu3_p",
            Gadget::PiPrime => "pi_p",
            Gadget::Nu4Prime => "nu4_p",
            Gadget::PiSecond => "pi_pp",
            Gadget::SigmaSecond => "sigma_pp",
        }
    }

    pub fn from_name(name: &str) -> Option<Gadget> {
        Gadget::ORDER.into_iter().find(|g| g.as_str() == name)
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a gadget sits in `μ`: 1-based inclusive positions and the value
/// offset applied to its base sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GadgetSpan {
    pub gadget: Gadget,
    pub start: usize,
    pub end: usize,
    pub offset: usize,
}

impl GadgetSpan {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn contains(&self, position: usize) -> bool {
        (self.start..=self.end).contains(&position)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub mu: Permutation,
    pub constants: ReductionConstants,
    pub layout: Vec<GadgetSpan>,
    pub pi: Permutation,
    pub sigma: Permutation,
}

fn increasing(len: usize) -> Vec<Letter> {
    (1..=len as Letter).collect()
}

fn decreasing(len: usize) -> Vec<Letter> {
    (1..=len as Letter).rev().collect()
}

fn framed(inner: &Permutation) -> Vec<Letter> {
    let m = inner.len() as Letter;
    let mut out = Vec::with_capacity(inner.len() + 2);
    out.push(m + 1);
    out.extend_from_slice(inner.letters());
    out.push(m + 2);
    out
}

/// Base sequence and offset of each gadget.
fn gadget_parts(c: &ReductionConstants, pi: &Permutation, sigma: &Permutation) -> [(Gadget, Vec<Letter>, usize); 12] {
    let (n, k) = (pi.len(), sigma.len());
    let ReductionConstants { n1, n2, n3, n4 } = *c;
    let top = 2 * n2 + 2 * n4 + 2 * n + 2 * k + 4;
    [
        (Gadget::Nu1, increasing(n1), top + 2 * n3),
        (Gadget::Nu2, decreasing(n2), n2),
        (Gadget::Nu1Prime, increasing(n1), n1 + top + 2 * n3),
        (Gadget::Nu3, increasing(n3), top),
        (Gadget::SigmaPrime, framed(sigma), 2 * n2 + n4 + 2 * n + k + 2),
        (Gadget::Nu4, decreasing(n4), 2 * n2 + n4 + 2 * n + 2 * k + 4),
        (Gadget::Nu2Prime, decreasing(n2), 0),
        (Gadget::Nu3Prime, increasing(n3), top + n3),
        (Gadget::PiPrime, framed(pi), 2 * n2 + n4 + n + k),
        (Gadget::Nu4Prime, decreasing(n4), 2 * n2),
        (Gadget::PiSecond, pi.letters().to_vec(), 2 * n2 + n4 + k),
        (Gadget::SigmaSecond, sigma.letters().to_vec(), 2 * n2 + n4),
    ]
}

pub fn build_instance(pi: &Permutation, sigma: &Permutation) -> Result<ReductionInstance> {
    let (n, k) = (pi.len(), sigma.len());
    if k > n {
        return Err(Error::PatternLargerThanText { pattern: k, text: n });
    }
    let constants = reduction_constants(n, k);
    let mut mu = Vec::with_capacity(constants.mu_len(n, k));
    let mut layout = Vec::with_capacity(12);
    for (gadget, base, offset) in gadget_parts(&constants, pi, sigma) {
        let start = mu.len() + 1;
        mu.extend(base.iter().map(|&l| l + offset as Letter));
        layout.push(GadgetSpan { gadget, start, end: mu.len(), offset });
    }
    Ok(ReductionInstance { mu: Permutation::new(mu)?, constants, layout, pi: pi.clone(), sigma: sigma.clone() })
}

impl ReductionInstance {
    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn span(&self, gadget: Gadget) -> Option<&GadgetSpan> {
        self.layout.iter().find(|s| s.gadget == gadget)
    }

    pub fn gadget_at(&self, position: usize) -> Option<Gadget> {
        self.layout.iter().find(|s| s.contains(position)).map(|s| s.gadget)
    }

    /// Expected number of arcs between each ordered pair of gadgets in the
    /// forward witness.
    pub fn arc_inventory(&self) -> BTreeMap<(Gadget, Gadget), usize> {
        let ReductionConstants { n1, n2, n3, n4 } = self.constants;
        let (n, k) = (self.n(), self.k());
        BTreeMap::from([
            ((Gadget::Nu1, Gadget::Nu1Prime), n1),
            ((Gadget::Nu2, Gadget::Nu2Prime), n2),
            ((Gadget::Nu3, Gadget::Nu3Prime), n3),
            ((Gadget::Nu4, Gadget::Nu4Prime), n4),
            ((Gadget::SigmaPrime, Gadget::PiPrime), k + 2),
            ((Gadget::PiPrime, Gadget::PiSecond), n - k),
            ((Gadget::PiSecond, Gadget::SigmaSecond), k),
        ])
    }
}

/// The all-rightward matching on `μ` that threads the given occurrence of
/// `σ` in `π`.
pub fn build_forward_witness(inst: &ReductionInstance, occurrence: &IndexSet) -> Result<DirectedMatching> {
    let (n, k) = (inst.n(), inst.k());
    let valid = occurrence.len() == k
        && occurrence.check_within(n).is_ok()
        && inst.pi.subword(occurrence).ok().and_then(|w| standardize(&w).ok()).as_ref() == Some(&inst.sigma);
    if !valid {
        return Err(Error::InvalidOccurrence);
    }
    let start = |g| inst.span(g).map(|s| s.start).ok_or(Error::InvalidOccurrence);
    let mut arcs = Vec::with_capacity(inst.mu.len() / 2);
    for (from, to) in [
        (Gadget::Nu1, Gadget::Nu1Prime),
        (Gadget::Nu2, Gadget::Nu2Prime),
        (Gadget::Nu3, Gadget::Nu3Prime),
        (Gadget::Nu4, Gadget::Nu4Prime),
    ] {
        let (a, b) = (start(from)?, start(to)?);
        let len = inst.span(from).map_or(0, GadgetSpan::len);
        arcs.extend((0..len).map(|i| Arc::new(a + i, b + i)));
    }
    let (sp, pp) = (start(Gadget::SigmaPrime)?, start(Gadget::PiPrime)?);
    let (ps, ss) = (start(Gadget::PiSecond)?, start(Gadget::SigmaSecond)?);
    arcs.push(Arc::new(sp, pp));
    arcs.push(Arc::new(sp + k + 1, pp + n + 1));
    for (i, &j) in occurrence.positions().iter().enumerate() {
        arcs.push(Arc::new(sp + 1 + i, pp + j));
        arcs.push(Arc::new(ps + j - 1, ss + i));
    }
    for j in (1..=n).filter(|&j| !occurrence.contains(j)) {
        arcs.push(Arc::new(pp + j, ps + j - 1));
    }
    DirectedMatching::new(inst.mu.clone(), arcs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `Nᵢ` is even.
    EvenConstant {
        index: usize,
        value: usize,
    },
    /// `Nᵢ` does not dominate the later constants.
    Dominance {
        index: usize,
    },
    /// Constants differ from the formulas for this `(n, k)`.
    Constants,
    Length {
        expected: usize,
        found: usize,
    },
    NotBijective,
    /// Gadget spans are out of order, overlapping or leave gaps.
    Layout,
    /// A gadget's letters differ from its definition.
    GadgetContent(Gadget),
    /// The witness is not a directed perfect matching on `μ`.
    Matching(Error),
    P1,
    P2,
    Inventory {
        from: Option<Gadget>,
        to: Option<Gadget>,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EvenConstant { index, value } => write!(f, "N{index} = {value} is even"),
            Violation::Dominance { index } => write!(f, "N{index} does not dominate the later constants"),
            Violation::Constants => f.write_str("constants differ from their defining formulas"),
            Violation::Length { expected, found } => write!(f, "|mu| = {found}, expected {expected}"),
            Violation::NotBijective => f.write_str("mu is not a permutation"),
            Violation::Layout => f.write_str("gadget spans do not partition mu in order"),
            Violation::GadgetContent(g) => write!(f, "gadget {g} has wrong letters"),
            Violation::Matching(e) => write!(f, "witness is not a perfect matching: {e}"),
            Violation::P1 => f.write_str("witness violates P1"),
            Violation::P2 => f.write_str("witness violates P2"),
            Violation::Inventory { from, to, expected, found } => {
                let name = |g: &Option<Gadget>| g.map_or("?", Gadget::as_str);
                write!(f, "{} arcs from {} to {}, expected {expected}", found, name(from), name(to))
            }
        }
    }
}

/// Re-checks every structural property of the instance and, if given, the
/// witness arcs. An empty list means everything holds.
pub fn verify_instance(inst: &ReductionInstance, witness: Option<&[Arc]>) -> Vec<Violation> {
    let mut out = Vec::new();
    let (n, k) = (inst.n(), inst.k());
    let c = inst.constants;
    for (i, value) in c.as_array().into_iter().enumerate() {
        if value % 2 == 0 {
            out.push(Violation::EvenConstant { index: i + 1, value });
        }
    }
    out.extend(c.dominance_failures(n, k).into_iter().map(|index| Violation::Dominance { index }));
    if c != reduction_constants(n, k) {
        out.push(Violation::Constants);
    }
    let expected = c.mu_len(n, k);
    if inst.mu.len() != expected {
        out.push(Violation::Length { expected, found: inst.mu.len() });
    }
    if Permutation::from_slice(inst.mu.letters()).is_err() {
        out.push(Violation::NotBijective);
    }
    let ordered = inst.layout.len() == 12
        && inst.layout.iter().zip(Gadget::ORDER).all(|(s, g)| s.gadget == g)
        && inst.layout.first().is_some_and(|s| s.start == 1)
        && inst.layout.last().is_some_and(|s| s.end == inst.mu.len())
        && inst.layout.windows(2).all(|w| w[1].start == w[0].end + 1);
    if !ordered {
        out.push(Violation::Layout);
    } else {
        for ((gadget, base, offset), span) in gadget_parts(&c, &inst.pi, &inst.sigma).into_iter().zip(&inst.layout) {
            let lifted = base.iter().map(|&l| l + offset as Letter);
            let actual = inst.mu.letters().get(span.start - 1..span.end).unwrap_or(&[]);
            if span.offset != offset || !lifted.eq(actual.iter().copied()) {
                out.push(Violation::GadgetContent(gadget));
            }
        }
    }
    if let Some(arcs) = witness {
        verify_witness(inst, arcs, ordered, &mut out);
    }
    out
}

fn verify_witness(inst: &ReductionInstance, arcs: &[Arc], layout_ok: bool, out: &mut Vec<Violation>) {
    match DirectedMatching::new(inst.mu.clone(), arcs.iter().copied()) {
        Err(e) => out.push(Violation::Matching(e)),
        Ok(m) => {
            if !m.satisfies_p1() {
                out.push(Violation::P1);
            }
            if !m.satisfies_p2() {
                out.push(Violation::P2);
            }
        }
    }
    if !layout_ok {
        return;
    }
    let mut found: BTreeMap<(Option<Gadget>, Option<Gadget>), usize> = BTreeMap::new();
    for arc in arcs {
        *found.entry((inst.gadget_at(arc.source), inst.gadget_at(arc.sink))).or_default() += 1;
    }
    let expected = inst.arc_inventory();
    for (&(from, to), &count) in &expected {
        let got = found.remove(&(Some(from), Some(to))).unwrap_or(0);
        if got != count {
            out.push(Violation::Inventory { from: Some(from), to: Some(to), expected: count, found: got });
        }
    }
    for ((from, to), got) in found {
        out.push(Violation::Inventory { from, to, expected: 0, found: got });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn perm(s: &str) -> Permutation {
        Permutation::new(s.bytes().map(|b| (b - b'0') as Letter).collect()).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(reduction_constants(6, 3).as_array(), [4875, 975, 195, 37]);
        assert_eq!(reduction_constants(1, 1).as_array(), [1775, 355, 71, 13]);
        for n in 0..=50 {
            for k in 0..=n {
                let c = reduction_constants(n, k);
                assert!(c.as_array().iter().all(|x| x % 2 == 1));
                assert!(c.dominance_failures(n, k).is_empty());
            }
        }
    }

    #[test]
    fn running_example_layout() {
        let inst = build_instance(&perm("452136"), &perm("312")).unwrap();
        assert_eq!(inst.mu.len(), 12186);
        let sp = inst.span(Gadget::SigmaPrime).unwrap();
        let (n1, n2, n3, n4) = (4875, 975, 195, 37);
        assert_eq!((sp.start, sp.end), (2 * n1 + n2 + n3 + 1, 2 * n1 + n2 + n3 + 5));
        let off = (2 * n2 + n4 + 2 * 6 + 3 + 2) as Letter;
        let block: Vec<Letter> = inst.mu.letters()[sp.start - 1..sp.end].to_vec();
        assert_eq!(block, vec![4 + off, 3 + off, 1 + off, 2 + off, 5 + off]);
        let pp = inst.span(Gadget::PiPrime).unwrap();
        assert_eq!(pp.start, 2 * n1 + 2 * n2 + 2 * n3 + n4 + 3 + 2 + 1);
        assert!(verify_instance(&inst, None).is_empty());
    }

    #[test]
    fn value_bands_are_contiguous() {
        let inst = build_instance(&perm("452136"), &perm("312")).unwrap();
        let mut bands: Vec<(Letter, Letter)> = inst
            .layout
            .iter()
            .map(|s| {
                let w = &inst.mu.letters()[s.start - 1..s.end];
                (*w.iter().min().unwrap(), *w.iter().max().unwrap())
            })
            .collect();
        bands.sort();
        assert_eq!(bands[0].0, 1);
        assert!(bands.windows(2).all(|w| w[1].0 == w[0].1 + 1));
    }

    #[test]
    fn smallest_instance() {
        let inst = build_instance(&perm("1"), &perm("1")).unwrap();
        assert_eq!(inst.mu.len(), 4436);
        let w = build_forward_witness(&inst, &IndexSet::new(vec![1]).unwrap()).unwrap();
        assert_eq!(w.arcs().len(), 2218);
        assert!(w.satisfies_p1());
        assert!(verify_instance(&inst, None).is_empty());
    }

    #[test]
    fn running_example_witness() {
        let inst = build_instance(&perm("452136"), &perm("312")).unwrap();
        let w = build_forward_witness(&inst, &IndexSet::new(vec![2, 3, 5]).unwrap()).unwrap();
        assert!(w.satisfies_p1());
        let report = verify_instance(&inst, Some(w.arcs()));
        assert!(report.iter().all(|v| *v == Violation::P2), "{report:?}");
        assert_eq!(build_forward_witness(&inst, &IndexSet::new(vec![1, 2, 3]).unwrap()), Err(Error::InvalidOccurrence));
    }

    /// The ν₄ band lies above σ′ while ν′₄ lies below π′, so each ν₄ → ν′₄
    /// arc orders its letters oppositely to every arc among σ′, π′, π″, σ″.
    /// All other arc pairs of the witness agree.
    #[test]
    fn p2_conflicts_are_confined_to_nu4_arcs() {
        let inst = build_instance(&perm("452136"), &perm("312")).unwrap();
        let w = build_forward_witness(&inst, &IndexSet::new(vec![2, 3, 5]).unwrap()).unwrap();
        let m = inst.mu.letters();
        let middle = [Gadget::SigmaPrime, Gadget::PiPrime, Gadget::PiSecond];
        let mut conflicts = 0;
        for (i, a) in w.arcs().iter().enumerate() {
            for b in &w.arcs()[i + 1..] {
                if (m[a.source - 1] < m[b.source - 1]) == (m[a.sink - 1] < m[b.sink - 1]) {
                    continue;
                }
                conflicts += 1;
                let mut pair = [inst.gadget_at(a.source).unwrap(), inst.gadget_at(b.source).unwrap()];
                pair.sort();
                assert!(pair[0] == Gadget::Nu4 || pair[1] == Gadget::Nu4, "{pair:?}");
                assert!(middle.contains(&pair[0]) || middle.contains(&pair[1]), "{pair:?}");
            }
        }
        // N₄ times the (k+2) + (n-k) + k arcs of the middle gadgets.
        assert_eq!(conflicts, 37 * (5 + 3 + 3));
    }

    #[test]
    fn errors_and_corruptions() {
        assert_eq!(
            build_instance(&perm("12"), &perm("123")),
            Err(Error::PatternLargerThanText { pattern: 3, text: 2 })
        );
        let mut inst = build_instance(&perm("21"), &perm("1")).unwrap();
        let w = build_forward_witness(&inst, &IndexSet::new(vec![1]).unwrap()).unwrap();

        let mut arcs = w.arcs().to_vec();
        let nu1 = *inst.span(Gadget::Nu1).unwrap();
        let i = arcs.iter().position(|a| a.source == nu1.start).unwrap();
        let j = arcs.iter().position(|a| a.source == nu1.start + 1).unwrap();
        arcs[i] = Arc::new(nu1.start, nu1.start + 1);
        arcs.remove(j);
        let report = verify_instance(&inst, Some(&arcs));
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::Matching(Error::DuplicatePosition(_) | Error::NotPerfect(_)))));
        assert!(report.iter().any(|v| matches!(v, Violation::Inventory { .. })));

        inst.constants.n4 -= 1;
        let report = verify_instance(&inst, None);
        assert!(report.contains(&Violation::EvenConstant { index: 4, value: inst.constants.n4 }));
    }
}
