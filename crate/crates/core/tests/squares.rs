mod common;

use std::collections::BTreeSet;

use common::{perm, random_perm, random_square, rng};
use permsquare_core::perm::all_permutations;
use permsquare_core::solver::{count_squares, square_matchings, CountFilter};
use permsquare_core::{
    is_square_matching, is_square_oracle, shuffle, square_roots, Arc, DirectedMatching, Letter, Morphism, Permutation,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Squares of size `2h`, generated as the supports of `σ ⧢ σ`.
fn squares_by_shuffling(h: usize) -> BTreeSet<Permutation> {
    all_permutations(h)
        .iter()
        .flat_map(|s| shuffle(s, s).unwrap().iter().map(|(p, _)| p.clone()).collect::<Vec<_>>())
        .collect()
}

#[test]
fn solver_recognizes_exactly_the_shuffle_squares() {
    let mut counts = Vec::new();
    for h in 0..=4 {
        let squares = squares_by_shuffling(h);
        counts.push(squares.len());
        for p in all_permutations(2 * h) {
            assert_eq!(is_square_matching(&p).is_some(), squares.contains(&p), "{p}");
        }
    }
    assert_eq!(counts, vec![1, 2, 20, 504, 21032]);
}

#[test]
fn squares_are_stable_under_symmetries() {
    for n in [0, 2, 4, 6, 8] {
        for p in all_permutations(n) {
            let roots = square_roots(&p, 20).unwrap();
            if roots.is_empty() {
                continue;
            }
            for phi in Morphism::ALL {
                let mapped = square_roots(&phi.apply(&p), 20).unwrap();
                for r in &roots {
                    assert!(mapped.contains(&phi.apply(r)), "{phi:?} {p} root {r}");
                }
            }
        }
    }
}

#[test]
fn witnesses_are_valid() {
    for n in [2, 4, 6, 8] {
        for p in all_permutations(n) {
            if let Some(w) = is_square_matching(&p) {
                assert!(w.matching.satisfies_p1_pairwise() && w.matching.satisfies_p2_pairwise(), "{p}");
                assert_eq!(w.matching.sources_pattern(), w.matching.sinks_pattern());
                assert_eq!(w.root.len(), n / 2);
                assert!(is_square_oracle(&p, 20).unwrap().is_some());
            }
        }
    }
}

fn random_matching(rng: &mut rand_chacha::ChaCha8Rng, arcs: usize) -> DirectedMatching {
    let n = 2 * arcs;
    let host = random_perm(rng, n);
    let mut positions: Vec<usize> = (1..=n).collect();
    positions.shuffle(rng);
    let arcs = positions.chunks(2).map(|c| if rng.random() { Arc::new(c[0], c[1]) } else { Arc::new(c[1], c[0]) });
    DirectedMatching::new(host, arcs).unwrap()
}

#[test]
fn reversing_preserves_both_properties() {
    let mut rng = rng();
    let mut positives = 0;
    for case in 0..2000 {
        let m = if case % 2 == 0 {
            let arcs = rng.random_range(1..=6);
            random_matching(&mut rng, arcs)
        } else {
            // Bias towards positives: take a witness of a random square.
            let h = rng.random_range(1..=6);
            let root = random_perm(&mut rng, h);
            let p = random_square(&mut rng, &root);
            let w = is_square_matching(&p).unwrap().matching;
            if rng.random() {
                w.reverse()
            } else {
                w
            }
        };
        let holds = m.satisfies_p1() && m.satisfies_p2();
        let r = m.reverse();
        assert_eq!(holds, r.satisfies_p1() && r.satisfies_p2(), "{:?}", m);
        positives += usize::from(holds);
    }
    assert!(positives >= 1000);
}

/// Maximal runs `[i, j]` (1-based, inclusive, length ≥ 2) that are monotone
/// in the given direction, together with all their sub-intervals.
fn monotone_intervals(p: &[Letter], increasing: bool) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (p[j - 1] < p[j]) != increasing {
                break;
            }
            out.push((i + 1, j + 1));
        }
    }
    out
}

fn arcs_between(m: &DirectedMatching, a: (usize, usize), b: (usize, usize)) -> usize {
    let inside = |x: usize, (lo, hi): (usize, usize)| (lo..=hi).contains(&x);
    m.arcs()
        .iter()
        .filter(|arc| (inside(arc.source, a) && inside(arc.sink, b)) || (inside(arc.source, b) && inside(arc.sink, a)))
        .count()
}

fn check_monotone_blocks(p: &Permutation) -> usize {
    let letters = p.letters();
    let inc = monotone_intervals(letters, true);
    let dec = monotone_intervals(letters, false);
    let values = |(lo, hi): (usize, usize)| {
        let w = &letters[lo - 1..hi];
        (*w.iter().min().unwrap(), *w.iter().max().unwrap())
    };
    let mut checked = 0;
    let matchings = square_matchings(p);
    for &first in inc.iter().chain(&dec) {
        let first_inc = inc.contains(&first);
        let second_kind = if first_inc { &dec } else { &inc };
        for &second in second_kind.iter().filter(|s| s.0 > first.1) {
            let (f, s) = (values(first), values(second));
            // Increasing above a later decreasing block, or decreasing below
            // a later increasing block.
            let shaped = if first_inc { f.0 > s.1 } else { f.1 < s.0 };
            if !shaped {
                continue;
            }
            for m in &matchings {
                assert!(arcs_between(m, first, second) <= 1, "{p} {first:?} {second:?} {:?}", m.arcs());
                checked += 1;
            }
        }
    }
    checked
}

#[test]
fn at_most_one_arc_between_opposite_monotone_blocks() {
    let mut checked = 0;
    for n in [4, 6, 8] {
        for p in all_permutations(n) {
            checked += check_monotone_blocks(&p);
        }
    }
    // Planted block shapes at sizes 10 and 12.
    let mut rng = rng();
    for _ in 0..200 {
        let n = if rng.random() { 10 } else { 12 };
        let (a, b) = (rng.random_range(2..=4), rng.random_range(2..=4));
        let rest = n - a - b;
        let cut1 = rng.random_range(0..=rest);
        let cut2 = rng.random_range(cut1..=rest);
        let mut values: Vec<Letter> = (1..=n as Letter).collect();
        values.shuffle(&mut rng);
        let (block_values, others) = values.split_at(a + b);
        let mut block_values = block_values.to_vec();
        block_values.sort_unstable();
        let flip = rng.random::<bool>();
        // flip = false: increasing above decreasing; true: decreasing below increasing.
        let (low, high) = block_values.split_at(if flip { a } else { b });
        let mut first: Vec<Letter> = if flip { low.to_vec() } else { high.to_vec() };
        let mut second: Vec<Letter> = if flip { high.to_vec() } else { low.to_vec() };
        if flip {
            first.reverse()
        } else {
            second.reverse()
        }
        let mut letters = others[..cut1].to_vec();
        letters.extend(&first);
        letters.extend(&others[cut1..cut2]);
        letters.extend(&second);
        letters.extend(&others[cut2..]);
        let p = Permutation::new(letters).unwrap();
        if is_square_matching(&p).is_some() {
            checked += check_monotone_blocks(&p);
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn displayed_sequences_up_to_size_8() {
    let f = |avoid: &[&str], classes| CountFilter { avoid: avoid.iter().map(|s| perm(s)).collect(), classes };
    let run = |filter: &CountFilter| count_squares(8, filter, 10).unwrap().counts;
    assert_eq!(run(&f(&[], false)), vec![1, 0, 2, 0, 20, 0, 504, 0, 21032]);
    assert_eq!(run(&f(&["123"], false)), vec![1, 0, 2, 0, 12, 0, 118, 0, 1218]);
    assert_eq!(run(&f(&["132"], false)), vec![1, 0, 2, 0, 11, 0, 84, 0, 743]);
    assert_eq!(run(&f(&[], true)), vec![1, 0, 1, 0, 6, 0, 81, 0, 2774]);
    assert_eq!(run(&f(&["213", "231"], false)), vec![1, 0, 2, 0, 6, 0, 22, 0, 82]);
}

#[test]
fn class_count_bounds_raw_count() {
    let raw = count_squares(8, &CountFilter::default(), 10).unwrap().counts;
    let classes = count_squares(8, &CountFilter { avoid: vec![], classes: true }, 10).unwrap().counts;
    for (r, c) in raw.iter().zip(&classes) {
        assert!(c * 8 >= *r && c <= r);
    }
}
