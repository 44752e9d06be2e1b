//! Shuffle product and unshuffling coproduct of permutations, square
//! permutations, and the combinatorics around them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; IO, parallel drivers and file formats live
//! in the `permsquare` companion crate.
//!
//! Positions and letters are 1-based throughout the public API, matching the
//! usual one-line notation for permutations.

#![cfg_attr(not(test), no_std)]
#![deny(rustdoc::broken_intra_doc_links)]

extern crate alloc;

mod error;
pub mod matching;
pub mod perm;
pub mod reduction;
pub mod shuffle;
pub mod solver;
pub mod words;

pub use error::{Error, Result};
pub use matching::{Arc, ArcPattern, DirectedMatching, Occurrence, Orientation, Shape};
pub use perm::{avoids_all, find_occurrence, occurs, standardize, IndexSet, Letter, Permutation};
pub use reduction::{
    build_forward_witness, build_instance, reduction_constants, verify_instance, Gadget, GadgetSpan,
    ReductionConstants, ReductionInstance, Violation,
};
pub use shuffle::{coproduct, shuffle, Morphism, ShuffleExpansion, TensorExpansion};
pub use solver::{
    is_square_matching, is_square_oracle, square_roots, symmetry_class_representative, CountFilter, CountReport,
    MatchingSolver, SquareWitness,
};
pub use words::{bin_to_perm, is_square_word, perm_to_bin, shuffle_member, BinaryWord};
