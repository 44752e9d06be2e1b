#![allow(dead_code)]

use permsquare_core::{Letter, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed for randomized tests; override with `PERMSQUARE_SEED`.
pub fn rng() -> ChaCha8Rng {
    let seed = std::env::var("PERMSQUARE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed_2016);
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn perm(s: &str) -> Permutation {
    Permutation::new(s.bytes().map(|b| (b - b'0') as Letter).collect()).unwrap()
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut letters: Vec<Letter> = (1..=n as Letter).collect();
    letters.shuffle(rng);
    Permutation::new(letters).unwrap()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A random square with the given root: the root is planted on a random
/// half of the positions using a random half of the values, and again on
/// the complement.
pub fn random_square(rng: &mut ChaCha8Rng, root: &Permutation) -> Permutation {
    let h = root.len();
    let mut positions: Vec<usize> = (0..2 * h).collect();
    let mut values: Vec<Letter> = (1..=2 * h as Letter).collect();
    positions.shuffle(rng);
    values.shuffle(rng);
    let mut letters = vec![0; 2 * h];
    for half in [0, h] {
        let mut pos = positions[half..half + h].to_vec();
        let mut val = values[half..half + h].to_vec();
        pos.sort_unstable();
        val.sort_unstable();
        for (i, &r) in root.letters().iter().enumerate() {
            letters[pos[i]] = val[r as usize - 1];
        }
    }
    Permutation::new(letters).unwrap()
}
