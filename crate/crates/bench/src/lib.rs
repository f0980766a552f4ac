//! Fixtures shared by the benchmarks.

use kucera_core::{ClopenSet, Point, Word};

/// A set of `count` pseudo-random cylinders of length `depth`, from a fixed seed.
pub fn scattered_set(depth: usize, count: usize, seed: u64) -> ClopenSet {
    let bits = Point::seeded(seed).prefix_of(depth * count);
    ClopenSet::from_words(bits.bits().chunks(depth).map(|c| Word::from_bits(c.to_vec())))
}
