use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::Error;

/// A finitely presented infinite sequence.
///
/// These are stand-ins for random sequences: nothing here claims a point is
/// Martin-Löf random.
///
/// `Seeded` points draw bits from ChaCha8 seeded with `seed_from_u64(seed)`,
/// consuming each `next_u64` output least-significant bit first. The stream is
/// stable across platforms and releases of `rand_chacha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Point {
    /// `preamble` followed by `cycle` repeated forever. An empty cycle is
    /// rejected by `validate` and reads as zeros.
    Periodic { preamble: Word, cycle: Word },
    Seeded { seed: u64 },
    /// `prefix` followed by `fill` forever.
    Explicit {
        prefix: Word,
        #[serde(with = "bit")]
        fill: bool,
    },
}

impl Point {
    pub fn periodic(preamble: &str, cycle: &str) -> Self {
        Point::Periodic {
            preamble: preamble.into(),
            cycle: cycle.into(),
        }
    }

    pub fn seeded(seed: u64) -> Self {
        Point::Seeded { seed }
    }

    pub fn explicit(prefix: &str, fill: bool) -> Self {
        Point::Explicit {
            prefix: prefix.into(),
            fill,
        }
    }

    /// `000…`.
    pub fn zeros() -> Self {
        Point::explicit("", false)
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            Point::Periodic { cycle, .. } if cycle.is_empty() => {
                Err(Error::Malformed("periodic point needs a non-empty cycle".into()))
            }
            _ => Ok(()),
        }
    }

    /// The first `n` bits. `prefix_of(n)` is always a prefix of `prefix_of(m)` for `n <= m`.
    pub fn prefix_of(&self, n: usize) -> Word {
        let mut bits = Vec::with_capacity(n);
        match self {
            Point::Periodic { preamble, cycle } => {
                bits.extend(preamble.bits().iter().take(n));
                while bits.len() < n {
                    if cycle.is_empty() {
                        bits.push(false);
                    } else {
                        let k = bits.len() - preamble.len();
                        bits.push(cycle.bit(k % cycle.len()));
                    }
                }
            }
            Point::Seeded { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                while bits.len() < n {
                    let chunk = rng.next_u64();
                    let take = (n - bits.len()).min(64);
                    bits.extend((0..take).map(|i| (chunk >> i) & 1 == 1));
                }
            }
            Point::Explicit { prefix, fill } => {
                bits.extend(prefix.bits().iter().take(n));
                bits.resize(n, *fill);
            }
        }
        Word::from_bits(bits)
    }
}

/// Serialize a bit as the integer 0 or 1; accept integers or booleans.
pub mod bit {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(*b as u8)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(u8),
            Bool(bool),
        }
        match Repr::deserialize(d)? {
            Repr::Bool(b) => Ok(b),
            Repr::Int(0) => Ok(false),
            Repr::Int(1) => Ok(true),
            Repr::Int(other) => Err(serde::de::Error::custom(format!("bit must be 0 or 1, got {other}"))),
        }
    }
}
