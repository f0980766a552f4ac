//! Bi-infinite sequences through the zig-zag embedding.
//!
//! A sequence `ω: ℤ → {0,1}` is stored as the one-sided sequence
//! `ω(0) ω(-1) ω(1) ω(-2) ω(2) …`, so bi-index `i` lives at position `z(i)`.

use std::collections::BTreeMap;

use crate::cantor::tree::{self, Node, EMPTY, FULL};
use crate::cantor::{ClopenSet, Word};

/// Finite partial assignment `ℤ → {0,1}`, a bidirectional cylinder.
pub type BiAssignment = BTreeMap<i64, bool>;

/// The bijection `z: ℤ → ℕ` with order `0, -1, 1, -2, 2, …`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BiIndexMap;

impl BiIndexMap {
    pub fn to_position(i: i64) -> usize {
        if i >= 0 {
            (2 * i) as usize
        } else {
            (-2 * i - 1) as usize
        }
    }

    pub fn to_index(j: usize) -> i64 {
        let j = j as i64;
        if j % 2 == 0 {
            j / 2
        } else {
            -(j + 1) / 2
        }
    }
}

/// Clopen set of embedded sequences agreeing with `assignments`.
///
/// Its uniform measure is `2^-|assignments|`.
pub fn embed_bidirectional(assignments: &BiAssignment) -> ClopenSet {
    let fixed: BTreeMap<usize, bool> = assignments
        .iter()
        .map(|(&i, &b)| (BiIndexMap::to_position(i), b))
        .collect();
    let Some(&last) = fixed.keys().next_back() else {
        return ClopenSet::full();
    };
    // Build bottom-up; free positions become `split(c, c)`, shared by interning.
    let mut node: Node = FULL;
    for pos in (0..=last).rev() {
        node = match fixed.get(&pos) {
            Some(false) => tree::split(node, EMPTY),
            Some(true) => tree::split(EMPTY, node),
            None => tree::split(node, node),
        };
    }
    ClopenSet::from_node(node)
}

/// The assignment obtained by reading the fixed positions of an embedded word.
pub fn word_assignment(w: &Word) -> BiAssignment {
    w.bits()
        .iter()
        .enumerate()
        .map(|(j, &b)| (BiIndexMap::to_index(j), b))
        .collect()
}

/// `T^n(I_x)` for the bidirectional left shift `(Tω)(i) = ω(i+1)`: every
/// constraint moves from `i` to `i - n`.
pub fn shift_assignment(x: &BiAssignment, n: i64) -> BiAssignment {
    x.iter().map(|(&i, &b)| (i - n, b)).collect()
}

/// Number of bi-indices covered by `x`, from its least to its greatest key.
pub fn span(x: &BiAssignment) -> i64 {
    match (x.keys().next(), x.keys().next_back()) {
        (Some(lo), Some(hi)) => hi - lo + 1,
        _ => 0,
    }
}

/// Serde adapter writing an assignment as a JSON map such as `{"-1": 1, "0": 0}`.
pub mod serde_assignment {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::BiAssignment;

    pub fn serialize<S: Serializer>(x: &BiAssignment, s: S) -> Result<S::Ok, S::Error> {
        x.iter()
            .map(|(i, &b)| (i.to_string(), b as u8))
            .collect::<BTreeMap<String, u8>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BiAssignment, D::Error> {
        let raw = BTreeMap::<String, u8>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let i: i64 = k.parse().map_err(|_| D::Error::custom(format!("`{k}` is not an integer index")))?;
                match v {
                    0 => Ok((i, false)),
                    1 => Ok((i, true)),
                    _ => Err(D::Error::custom(format!("bit at index {i} must be 0 or 1"))),
                }
            })
            .collect()
    }
}

/// [`serde_assignment`] for optional fields.
pub mod serde_assignment_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::BiAssignment;

    pub fn serialize<S: Serializer>(x: &Option<BiAssignment>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => super::serde_assignment::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BiAssignment>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_assignment")] BiAssignment);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(pairs: &[(i64, bool)]) -> BiAssignment {
        pairs.iter().copied().collect()
    }

    #[test]
    fn zig_zag_order() {
        let firsts: Vec<usize> = [0, -1, 1, -2, 2].iter().map(|&i| BiIndexMap::to_position(i)).collect();
        assert_eq!(firsts, [0, 1, 2, 3, 4]);
        for j in 0..100 {
            assert_eq!(BiIndexMap::to_position(BiIndexMap::to_index(j)), j);
        }
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed_bidirectional(&assign(&[(0, true)])), ClopenSet::of(&["1"]));
        assert_eq!(
            embed_bidirectional(&assign(&[(-1, false), (1, true)])),
            ClopenSet::of(&["001", "101"])
        );
        assert!(embed_bidirectional(&BiAssignment::new()).is_full());
    }

    #[test]
    fn embed_matches_enumeration() {
        let x = assign(&[(-2, true), (1, false), (2, true)]);
        let depth = 5;
        let brute = crate::cantor::normalize(Word::all_of_length(depth).filter(|w| {
            x.iter().all(|(&i, &b)| w.bit(BiIndexMap::to_position(i)) == b)
        }));
        assert_eq!(embed_bidirectional(&x), brute);
        assert_eq!(brute.uniform_measure(), crate::cantor::rational::dyadic(3));
    }

    #[test]
    fn span_counts_positions() {
        assert_eq!(span(&assign(&[(0, true)])), 1);
        assert_eq!(span(&assign(&[(-1, true), (1, false)])), 3);
        assert_eq!(span(&BiAssignment::new()), 0);
    }
}
