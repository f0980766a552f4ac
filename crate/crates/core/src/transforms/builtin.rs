use std::collections::HashMap;

use super::bidirectional::{embed_bidirectional, BiAssignment, BiIndexMap};
use super::ExactMap;
use crate::cantor::tree::{self, Node, EMPTY, FULL};
use crate::cantor::{ClopenSet, Word};

/// Left shift `σ(ω(0)ω(1)…) = ω(1)ω(2)…`.
#[derive(Debug, Clone, Copy)]
pub struct Shift;

impl ExactMap for Shift {
    fn preimage_cylinder(&self, w: &Word) -> ClopenSet {
        ClopenSet::cylinder(w).prepend_any_bit()
    }

    fn preimage_set(&self, s: &ClopenSet) -> ClopenSet {
        s.prepend_any_bit()
    }

    fn forward(&self, input: &[bool]) -> Vec<bool> {
        input.get(1..).unwrap_or_default().to_vec()
    }
}

/// Dyadic adding machine: `F(1^n 0 ω) = 0^n 1 ω`, `F(1^∞) = 0^∞`.
#[derive(Debug, Clone, Copy)]
pub struct Odometer;

impl Odometer {
    /// `{ω : ω + 1 ∈ s}` computed on the tree: `0ω' + 1 = 1ω'` and
    /// `1ω' + 1 = 0(ω' + 1)`.
    fn decrement(node: Node, memo: &mut HashMap<Node, Node>) -> Node {
        if node == EMPTY || node == FULL {
            return node;
        }
        if let Some(&n) = memo.get(&node) {
            return n;
        }
        let (z, o) = node.children().expect("inner node");
        let n = tree::split(o, Self::decrement(z, memo));
        memo.insert(node, n);
        n
    }
}

impl ExactMap for Odometer {
    fn preimage_cylinder(&self, w: &Word) -> ClopenSet {
        // F^-1(0^n 1 v Ω) = 1^n 0 v Ω and F^-1(0^m Ω) = 1^m Ω.
        let bits = w.bits();
        let mut out: Vec<bool> = bits.to_vec();
        match bits.iter().position(|&b| b) {
            Some(k) => {
                out[..k].iter_mut().for_each(|b| *b = true);
                out[k] = false;
            }
            None => out.iter_mut().for_each(|b| *b = true),
        }
        ClopenSet::cylinder(&Word::from_bits(out))
    }

    fn preimage_set(&self, s: &ClopenSet) -> ClopenSet {
        ClopenSet::from_node(Self::decrement(s.node(), &mut HashMap::new()))
    }

    fn forward(&self, input: &[bool]) -> Vec<bool> {
        let mut out = input.to_vec();
        match out.iter().position(|&b| !b) {
            Some(k) => {
                out[..k].iter_mut().for_each(|b| *b = false);
                out[k] = true;
            }
            None => out.iter_mut().for_each(|b| *b = false),
        }
        out
    }
}

/// `T^n` for the bidirectional left shift `(Tω)(i) = ω(i+1)`, acting on
/// zig-zag embedded sequences.
#[derive(Debug, Clone, Copy)]
pub struct BidirectionalShift {
    pub n: i64,
}

impl ExactMap for BidirectionalShift {
    fn preimage_cylinder(&self, w: &Word) -> ClopenSet {
        // (T^n ω)(i) = ω(i + n), so a constraint at i pulls back to i + n.
        let x: BiAssignment = w
            .bits()
            .iter()
            .enumerate()
            .map(|(j, &b)| (BiIndexMap::to_index(j) + self.n, b))
            .collect();
        embed_bidirectional(&x)
    }

    fn forward(&self, input: &[bool]) -> Vec<bool> {
        (0..)
            .map(|j| BiIndexMap::to_position(BiIndexMap::to_index(j) + self.n))
            .map_while(|src| input.get(src).copied())
            .collect()
    }
}

/// Maps every point to itself. Not ergodic; useful as a control.
#[derive(Debug, Clone, Copy)]
pub struct Identity;

impl ExactMap for Identity {
    fn preimage_cylinder(&self, w: &Word) -> ClopenSet {
        ClopenSet::cylinder(w)
    }

    fn preimage_set(&self, s: &ClopenSet) -> ClopenSet {
        *s
    }

    fn forward(&self, input: &[bool]) -> Vec<bool> {
        input.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        Word::from(s).into_bits()
    }

    #[test]
    fn odometer_adds_one() {
        assert_eq!(Odometer.forward(&bits("110101")), bits("001101"));
        assert_eq!(Odometer.forward(&bits("0")), bits("1"));
        assert_eq!(Odometer.forward(&bits("111")), bits("000"));
        assert_eq!(Odometer.forward(&[]), Vec::<bool>::new());
    }

    #[test]
    fn odometer_preimage_examples() {
        assert_eq!(Odometer.preimage_cylinder(&"1".into()), ClopenSet::of(&["0"]));
        assert_eq!(Odometer.preimage_cylinder(&"001".into()), ClopenSet::of(&["110"]));
        assert_eq!(Odometer.preimage_cylinder(&"00".into()), ClopenSet::of(&["11"]));
        let s = ClopenSet::of(&["1", "00"]);
        assert_eq!(Odometer.preimage_set(&s), ClopenSet::of(&["0", "11"]));
    }

    #[test]
    fn shift_preimage_example() {
        assert_eq!(Shift.preimage_cylinder(&"0".into()), ClopenSet::of(&["00", "10"]));
    }

    #[test]
    fn bidirectional_forward_reads_shifted_positions() {
        // n = 1: output bi-index i reads input bi-index i + 1.
        let t = BidirectionalShift { n: 1 };
        // 7 input bits hold bi-indices -3..=3; outputs 0, -1, 1, -2, 2, -3 read
        // 1, 0, 2, -1, 3, -2, and output 3 would need bi-index 4.
        assert_eq!(t.forward(&bits("0000000")).len(), 6);
        let marked = |pos: usize| {
            let mut v = vec![false; 8];
            v[pos] = true;
            v
        };
        // bi-index 1 sits at position 2 and becomes bi-index 0 (position 0).
        assert!(t.forward(&marked(2))[0]);
        // bi-index 0 (position 0) becomes bi-index -1 (position 1).
        assert!(t.forward(&marked(0))[1]);
    }
}
