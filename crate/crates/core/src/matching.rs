//! Directed perfect matchings on permutations, the twelve two-arc patterns
//! and the two properties that characterize square permutations:
//!
//! * **P1**: no containment, and no crossing between arcs of opposite
//!   directions;
//! * **P2**: for any two arcs `(i, i')`, `(j, j')`,
//!   `π(i) < π(j)` iff `π(i') < π(j')`.

use alloc::vec::Vec;
use core::fmt;

use crate::perm::{standardize, Letter, Permutation};
use crate::{Error, Result};

/// A directed arc between two 1-based positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub source: usize,
    pub sink: usize,
}

impl Arc {
    pub const fn new(source: usize, sink: usize) -> Self {
        Arc { source, sink }
    }

    pub fn lo(&self) -> usize {
        self.source.min(self.sink)
    }

    pub fn hi(&self) -> usize {
        self.source.max(self.sink)
    }

    pub fn orientation(&self) -> Orientation {
        if self.source < self.sink {
            Orientation::Rightward
        } else {
            Orientation::Leftward
        }
    }

    pub fn reversed(&self) -> Arc {
        Arc { source: self.sink, sink: self.source }
    }
}

impl From<(usize, usize)> for Arc {
    fn from((source, sink): (usize, usize)) -> Self {
        Arc { source, sink }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Rightward,
    Leftward,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Rightward, Orientation::Leftward];

    fn letter(self) -> char {
        match self {
            Orientation::Rightward => 'R',
            Orientation::Leftward => 'L',
        }
    }
}

/// How two arcs sit relative to each other once ordered by leftmost endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// The first arc ends before the second starts.
    Precedence,
    /// The first arc spans the second.
    Containment,
    /// `lo₁ < lo₂ < hi₁ < hi₂`.
    Crossing,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Precedence, Shape::Containment, Shape::Crossing];

    fn name(self) -> &'static str {
        match self {
            Shape::Precedence => "precedence",
            Shape::Containment => "containment",
            Shape::Crossing => "crossing",
        }
    }

    /// The two arcs of the shape on positions 1..=4, as `(lo, hi)` pairs in
    /// left-to-right order of their leftmost endpoints.
    fn spans(self) -> [(usize, usize); 2] {
        match self {
            Shape::Precedence => [(1, 2), (3, 4)],
            Shape::Containment => [(1, 4), (2, 3)],
            Shape::Crossing => [(1, 3), (2, 4)],
        }
    }
}

/// Shape and orientations of an arc pair; `first` has the smaller leftmost
/// endpoint.
pub fn classify(first: Arc, second: Arc) -> (Shape, Orientation, Orientation) {
    let (a, b) = if first.lo() < second.lo() { (first, second) } else { (second, first) };
    let shape = if b.lo() > a.hi() {
        Shape::Precedence
    } else if b.hi() < a.hi() {
        Shape::Containment
    } else {
        Shape::Crossing
    };
    (shape, a.orientation(), b.orientation())
}

/// A two-arc pattern on four vertices, optionally labeled by a permutation
/// of size 4 constraining the host letters at the vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcPattern {
    pub shape: Shape,
    pub orientations: (Orientation, Orientation),
    pub label: Option<Permutation>,
}

impl ArcPattern {
    pub fn unlabeled(shape: Shape, first: Orientation, second: Orientation) -> Self {
        ArcPattern { shape, orientations: (first, second), label: None }
    }

    pub fn labeled(shape: Shape, first: Orientation, second: Orientation, label: Permutation) -> Result<Self> {
        if label.len() != 4 {
            return Err(Error::LengthMismatch { expected: 4, found: label.len() });
        }
        Ok(ArcPattern { shape, orientations: (first, second), label: Some(label) })
    }

    /// The twelve unlabeled patterns, precedence first.
    pub fn all_unlabeled() -> Vec<ArcPattern> {
        let mut out = Vec::with_capacity(12);
        for shape in Shape::ALL {
            for o1 in Orientation::BOTH {
                for o2 in Orientation::BOTH {
                    out.push(ArcPattern::unlabeled(shape, o1, o2));
                }
            }
        }
        out
    }

    pub fn with_label(&self, label: Permutation) -> Result<Self> {
        ArcPattern::labeled(self.shape, self.orientations.0, self.orientations.1, label)
    }

    pub fn without_label(&self) -> Self {
        ArcPattern { label: None, ..self.clone() }
    }

    /// The pattern's arcs on vertices 1..=4.
    pub fn arcs(&self) -> [Arc; 2] {
        let [s1, s2] = self.shape.spans();
        let orient = |(lo, hi), o| match o {
            Orientation::Rightward => Arc::new(lo, hi),
            Orientation::Leftward => Arc::new(hi, lo),
        };
        [orient(s1, self.orientations.0), orient(s2, self.orientations.1)]
    }

    /// Unlabeled patterns excluded by P1.
    pub fn is_p1_forbidden(&self) -> bool {
        match self.shape {
            Shape::Containment => true,
            Shape::Crossing => self.orientations.0 != self.orientations.1,
            Shape::Precedence => false,
        }
    }

    /// Whether the labeled two-arc configuration itself breaks P2. `None`
    /// for unlabeled patterns.
    pub fn violates_p2(&self) -> Option<bool> {
        let label = self.label.as_ref()?;
        let [a, b] = self.arcs();
        let at = |pos: usize| label.letters()[pos - 1];
        Some((at(a.source) < at(b.source)) != (at(a.sink) < at(b.sink)))
    }

    fn matches(&self, first: Arc, second: Arc) -> bool {
        classify(first, second) == (self.shape, self.orientations.0, self.orientations.1)
    }
}

impl fmt::Display for ArcPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}{}", self.shape.name(), self.orientations.0.letter(), self.orientations.1.letter())?;
        if let Some(label) = &self.label {
            f.write_str(":")?;
            for l in label.letters() {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

/// The labeled patterns that any matching with P2 avoids and that are not
/// already excluded by P1.
///
/// For each shape, only the orientations that P1 admits are considered, and
/// a label is kept when the configuration breaks P2 under *every* admitted
/// orientation of that shape. This gives 12 labels on each of the two
/// same-direction crossings and 8 labels on each of the four precedences.
pub fn forbidden_labeled_patterns() -> Vec<ArcPattern> {
    let labels = crate::perm::all_permutations(4);
    let mut out = Vec::new();
    for shape in Shape::ALL {
        let admitted: Vec<ArcPattern> =
            ArcPattern::all_unlabeled().into_iter().filter(|u| u.shape == shape && !u.is_p1_forbidden()).collect();
        if admitted.is_empty() {
            continue;
        }
        for label in &labels {
            let always =
                admitted.iter().all(|u| u.with_label(label.clone()).ok().and_then(|p| p.violates_p2()) == Some(true));
            if always {
                out.extend(admitted.iter().filter_map(|u| u.with_label(label.clone()).ok()));
            }
        }
    }
    out.sort();
    out
}

/// One occurrence of a two-arc pattern: the two arcs in left-to-right order
/// and the four positions they cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub arcs: [Arc; 2],
    pub positions: [usize; 4],
}

/// A directed perfect matching on a permutation of even size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedMatching {
    host: Permutation,
    /// Sorted by leftmost endpoint.
    arcs: Vec<Arc>,
}

impl DirectedMatching {
    /// Checks the arcs are loop-free, pairwise independent and cover every
    /// position of `host`.
    pub fn new(host: Permutation, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let n = host.len();
        if n % 2 == 1 {
            return Err(Error::OddHost(n));
        }
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        let mut used = alloc::vec![false; n + 1];
        for arc in &arcs {
            if arc.source == arc.sink {
                return Err(Error::Loop(arc.source));
            }
            for p in [arc.source, arc.sink] {
                if p == 0 || p > n {
                    return Err(Error::IndexOutOfRange { index: p, len: n });
                }
                if used[p] {
                    return Err(Error::DuplicatePosition(p));
                }
                used[p] = true;
            }
        }
        if let Some(free) = (1..=n).find(|&p| !used[p]) {
            return Err(Error::NotPerfect(free));
        }
        arcs.sort_by_key(Arc::lo);
        Ok(DirectedMatching { host, arcs })
    }

    pub(crate) fn from_sorted_unchecked(host: Permutation, arcs: Vec<Arc>) -> Self {
        debug_assert!(Self::new(host.clone(), arcs.iter().copied()).is_ok());
        debug_assert!(arcs.windows(2).all(|w| w[0].lo() < w[1].lo()));
        DirectedMatching { host, arcs }
    }

    pub fn host(&self) -> &Permutation {
        &self.host
    }

    /// Arcs ordered by their leftmost endpoint.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    fn letter(&self, pos: usize) -> Letter {
        self.host.letters()[pos - 1]
    }

    fn word_at(&self, mut positions: Vec<usize>) -> Vec<Letter> {
        positions.sort_unstable();
        positions.into_iter().map(|p| self.letter(p)).collect()
    }

    /// Host letters at the sources, in position order.
    pub fn sources_word(&self) -> Vec<Letter> {
        self.word_at(self.arcs.iter().map(|a| a.source).collect())
    }

    /// Host letters at the sinks, in position order.
    pub fn sinks_word(&self) -> Vec<Letter> {
        self.word_at(self.arcs.iter().map(|a| a.sink).collect())
    }

    /// Every arc reversed.
    pub fn reverse(&self) -> Self {
        DirectedMatching { host: self.host.clone(), arcs: self.arcs.iter().map(Arc::reversed).collect() }
    }

    /// Occurrences of the unlabeled part of `pattern`; any label is ignored.
    pub fn find_unlabeled_occurrences(&self, pattern: &ArcPattern) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for (i, &a) in self.arcs.iter().enumerate() {
            for &b in &self.arcs[i + 1..] {
                if pattern.matches(a, b) {
                    let mut positions = [a.source, a.sink, b.source, b.sink];
                    positions.sort_unstable();
                    out.push(Occurrence { arcs: [a, b], positions });
                }
            }
        }
        out
    }

    /// Occurrences whose four host letters standardize to the label. An
    /// unlabeled pattern behaves as in [`Self::find_unlabeled_occurrences`].
    pub fn find_labeled_occurrences(&self, pattern: &ArcPattern) -> Vec<Occurrence> {
        let mut found = self.find_unlabeled_occurrences(pattern);
        if let Some(label) = &pattern.label {
            found.retain(|occ| {
                let word = occ.positions.map(|p| self.letter(p));
                standardize(&word).is_ok_and(|s| &s == label)
            });
        }
        found
    }

    /// P1 in `O(n)` on the sorted arcs: right endpoints must increase (no
    /// containment), and two consecutive arcs that cross must point the same
    /// way. Without containment, an arc crosses a contiguous run of its
    /// successors, so checking neighbours covers every crossing pair.
    pub fn satisfies_p1(&self) -> bool {
        self.arcs.windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            b.hi() > a.hi() && (b.lo() > a.hi() || a.orientation() == b.orientation())
        })
    }

    /// Reference P1 check over all arc pairs.
    pub fn satisfies_p1_pairwise(&self) -> bool {
        ArcPattern::all_unlabeled()
            .iter()
            .filter(|u| u.is_p1_forbidden())
            .all(|u| self.find_unlabeled_occurrences(u).is_empty())
    }

    /// P2 by sorting the arcs on their source letters and checking the sink
    /// letters come out sorted too.
    pub fn satisfies_p2(&self) -> bool {
        let mut pairs: Vec<(Letter, Letter)> =
            self.arcs.iter().map(|a| (self.letter(a.source), self.letter(a.sink))).collect();
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0].1 < w[1].1)
    }

    /// Reference P2 check straight from the pairwise definition.
    pub fn satisfies_p2_pairwise(&self) -> bool {
        self.arcs.iter().all(|a| {
            self.arcs
                .iter()
                .filter(|b| *b != a)
                .all(|b| (self.letter(a.source) < self.letter(b.source)) == (self.letter(a.sink) < self.letter(b.sink)))
        })
    }

    /// `STD` of the word of sources.
    pub fn sources_pattern(&self) -> Permutation {
        standardize(&self.sources_word()).expect("host letters are distinct")
    }

    /// `STD` of the word of sinks.
    pub fn sinks_pattern(&self) -> Permutation {
        standardize(&self.sinks_word()).expect("host letters are distinct")
    }
}
