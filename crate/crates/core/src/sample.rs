//! Seeded random elements for property checks.
//!
//! Extended elements come from a random `F̃`-word over a window of positions;
//! `B(∞)` elements from a random `f̃`-string. Both are deterministic in the
//! seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binf::{BInfinity, BinfElt};
use crate::cartan::{CartanDatum, Move, ReducedWord};
use crate::ext::{ExtCrystal, ExtElt};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A per-case generator derived from a base seed, so that parallel workers
/// reproduce the sequential stream case by case.
pub fn case_rng(seed: u64, case: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(case);
    r
}

/// Default position window for random extended elements.
pub const WINDOW: (i64, i64) = (-3, 3);

/// Default maximal word length, bounding the number of boxes.
pub const MAX_LEN: usize = 12;

/// Applies `len` uniformly random `F̃_{i,k}` with `k` in the window, where
/// `len` is uniform in `0..=max_len`.
pub fn random_ext<R: Rng>(ext: &ExtCrystal, rng: &mut R, max_len: usize, window: (i64, i64)) -> ExtElt {
    let len = rng.gen_range(0..=max_len);
    let mut b = ExtElt::highest();
    for _ in 0..len {
        let i = rng.gen_range(0..ext.rank());
        let k = rng.gen_range(window.0..=window.1);
        b = ext.f(i, k, &b);
    }
    b
}

/// Applies a random `f̃`-string of length uniform in `0..=max_len` to `1`.
pub fn random_binf<R: Rng>(binf: &BInfinity, rng: &mut R, max_len: usize) -> BinfElt {
    let len = rng.gen_range(0..=max_len);
    let mut b = binf.highest();
    for _ in 0..len {
        b = binf.f(rng.gen_range(0..binf.rank()), &b);
    }
    b
}

/// A reduced word of `w_0` reached from the reference word by `moves` random
/// attempts at braid moves; failed attempts leave the word unchanged.
pub fn random_longest_word<R: Rng>(c: &CartanDatum, rng: &mut R, moves: usize) -> ReducedWord {
    let mut w = c.longest_word().letters().to_vec();
    for _ in 0..moves {
        let position = rng.gen_range(0..w.len());
        let m = if rng.gen_bool(0.5) { 2 } else { 3 };
        // apply_move leaves the word untouched on failure
        let _ = c.apply_move(&mut w, Move { position, m });
    }
    c.reduced_word(w).expect("braid moves preserve reducedness")
}
