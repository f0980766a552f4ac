use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A finite binary word. The empty word names the whole space.
///
/// Words order by length first, then lexicographically (`0 < 1`), which is
/// the order canonical clopen sets are listed in.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    bits: Vec<bool>,
}

impl Word {
    pub fn empty() -> Self {
        Word { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Word { bits }
    }

    /// Word of length `len` spelling `value` in binary, most significant bit first.
    pub fn from_index(value: u64, len: usize) -> Self {
        let bits = (0..len)
            .map(|i| {
                let shift = len - 1 - i;
                shift < 64 && (value >> shift) & 1 == 1
            })
            .collect();
        Word { bits }
    }

    pub fn repeat(bit: bool, len: usize) -> Self {
        Word {
            bits: vec![bit; len],
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.bits.starts_with(&self.bits)
    }

    pub fn is_prefix_of_bits(&self, other: &[bool]) -> bool {
        other.starts_with(&self.bits)
    }

    /// `true` when one word extends the other, i.e. the cylinders intersect.
    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Word { bits }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            bits: self.bits[..len.min(self.len())].to_vec(),
        }
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word {
            bits: self.bits[start.min(self.len())..].to_vec(),
        }
    }

    pub fn child(&self, bit: bool) -> Word {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    /// All words of exactly `len` bits, in canonical order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        assert!(len < 64, "enumerating 2^{len} words");
        (0..1u64 << len).map(move |v| Word::from_index(v, len))
    }

    /// All words of length at most `max_len`, in canonical order.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(Word::all_of_length)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Malformed(format!(
                    "word `{s}` contains `{other}`, expected only 0 and 1"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from_bits)
    }
}

impl From<&str> for Word {
    /// Panics on characters other than `0`/`1`; meant for literals.
    fn from(s: &str) -> Self {
        s.parse().expect("binary word literal")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_length_then_lex() {
        let mut ws: Vec<Word> = ["10", "0", "", "01", "1"].iter().map(|s| Word::from(*s)).collect();
        ws.sort();
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["", "0", "1", "01", "10"]);
    }

    #[test]
    fn from_index_is_msb_first() {
        assert_eq!(Word::from_index(1, 3).to_string(), "001");
        assert_eq!(Word::from_index(6, 3).to_string(), "110");
        assert_eq!(Word::all_of_length(2).count(), 4);
    }

    #[test]
    fn rejects_non_binary() {
        assert!("012".parse::<Word>().is_err());
    }
}
