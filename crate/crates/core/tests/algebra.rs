mod common;

use std::collections::BTreeMap;

use common::{binomial, perm};
use permsquare_core::perm::all_permutations;
use permsquare_core::{coproduct, shuffle, Morphism, Permutation, ShuffleExpansion};

fn perms_up_to(n: usize) -> Vec<Permutation> {
    (0..=n).flat_map(all_permutations).collect()
}

#[test]
fn shuffle_is_dual_to_coproduct() {
    for n in 0..=7 {
        // Transpose of the coproduct at size n: (σ, ν) ↦ {π: coefficient}.
        let mut dual: BTreeMap<(Permutation, Permutation), BTreeMap<Permutation, u64>> = BTreeMap::new();
        for p in all_permutations(n) {
            for (l, r, c) in coproduct(&p).unwrap().iter() {
                dual.entry((l.clone(), r.clone())).or_default().insert(p.clone(), c);
            }
        }
        for k in 0..=n {
            for a in all_permutations(k) {
                for b in all_permutations(n - k) {
                    let product: BTreeMap<Permutation, u64> =
                        shuffle(&a, &b).unwrap().iter().map(|(p, c)| (p.clone(), c)).collect();
                    let expected = dual.remove(&(a.clone(), b.clone())).unwrap_or_default();
                    assert_eq!(product, expected, "{a} ⧢ {b}");
                }
            }
        }
        assert!(dual.is_empty());
    }
}

#[test]
fn coproduct_is_cocommutative() {
    for p in perms_up_to(7) {
        let delta = coproduct(&p).unwrap();
        assert_eq!(delta.flipped(), delta, "{p}");
    }
}

#[test]
fn shuffle_is_commutative_and_associative() {
    let all = perms_up_to(7);
    for a in &all {
        for b in all.iter().filter(|b| a.len() + b.len() <= 7) {
            let ab = shuffle(a, b).unwrap();
            assert_eq!(ab, shuffle(b, a).unwrap(), "{a} ⧢ {b}");
            for c in all.iter().filter(|c| a.len() + b.len() + c.len() <= 7) {
                let left = ab.mul(&ShuffleExpansion::single(c.clone())).unwrap();
                let right = ShuffleExpansion::single(a.clone()).mul(&shuffle(b, c).unwrap()).unwrap();
                assert_eq!(left, right, "({a} ⧢ {b}) ⧢ {c}");
            }
        }
    }
}

#[test]
fn coproduct_commutes_with_symmetries() {
    for p in perms_up_to(6) {
        let delta = coproduct(&p).unwrap();
        for phi in Morphism::ALL {
            assert_eq!(coproduct(&phi.apply(&p)).unwrap(), delta.apply_morphism(phi).unwrap(), "{phi:?} {p}");
        }
    }
}

#[test]
fn shuffle_commutes_with_symmetries() {
    let all = perms_up_to(5);
    for a in &all {
        for b in all.iter().filter(|b| a.len() + b.len() <= 6) {
            let ab = shuffle(a, b).unwrap();
            for phi in Morphism::ALL {
                let mapped = shuffle(&phi.apply(a), &phi.apply(b)).unwrap();
                assert_eq!(ab.apply_morphism(phi).unwrap(), mapped, "{phi:?} {a} {b}");
            }
        }
    }
}

#[test]
fn masses() {
    for p in perms_up_to(8) {
        assert_eq!(coproduct(&p).unwrap().total(), Some(1 << p.len()));
    }
    let all = perms_up_to(7);
    for a in &all {
        for b in all.iter().filter(|b| a.len() + b.len() <= 7) {
            let (m1, m2) = (a.len() as u64, b.len() as u64);
            // Positions and values are chosen independently.
            assert_eq!(shuffle(a, b).unwrap().total(), Some(binomial(m1 + m2, m1).pow(2)), "{a} ⧢ {b}");
        }
    }
}

#[test]
fn displayed_expansions() {
    let delta = coproduct(&perm("1234")).unwrap();
    let expected = [("", "1234", 1), ("1", "123", 4), ("12", "12", 6), ("123", "1", 4), ("1234", "", 1)];
    assert_eq!(delta.len(), expected.len());
    for (l, r, c) in expected {
        assert_eq!(delta.coefficient(&perm(l), &perm(r)), c);
    }
    let product = shuffle(&perm("12"), &perm("21")).unwrap();
    assert_eq!(product.len(), 20);
    assert_eq!(product.total(), Some(36));
    assert_eq!(product.coefficient(&perm("1432")), 3);
    assert_eq!(product.coefficient(&perm("1234")), 0);
}
