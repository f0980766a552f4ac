use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::measure::MeasureSpec;
use super::point::Point;
use super::rational::Rational;
use super::tree::{self, BinOp, Node, EMPTY, FULL};
use super::Word;

/// A finite union of cylinders, held in canonical form.
///
/// Canonical form is prefix-free, sibling-merged and sorted by
/// `(length, bits)`; two `ClopenSet`s are equal exactly when they denote the
/// same subset of Ω.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    root: Node,
}

/// Canonicalize an arbitrary finite union of cylinders.
pub fn normalize<I, W>(words: I) -> ClopenSet
where
    I: IntoIterator<Item = W>,
    W: std::borrow::Borrow<Word>,
{
    words
        .into_iter()
        .fold(ClopenSet::empty(), |acc, w| acc.union(&ClopenSet::cylinder(w.borrow())))
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet { root: EMPTY }
    }

    /// Ω itself.
    pub fn full() -> Self {
        ClopenSet { root: FULL }
    }

    pub fn cylinder(w: &Word) -> Self {
        ClopenSet {
            root: tree::path(w.bits(), FULL),
        }
    }

    pub fn from_words<I, W>(words: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: std::borrow::Borrow<Word>,
    {
        normalize(words)
    }

    /// Convenience for literals: `ClopenSet::of(&["0", "10"])`.
    pub fn of(words: &[&str]) -> Self {
        normalize(words.iter().map(|s| Word::from(*s)))
    }

    pub(crate) fn from_node(root: Node) -> Self {
        ClopenSet { root }
    }

    pub(crate) fn node(&self) -> Node {
        self.root
    }

    /// Canonical cylinder list.
    ///
    /// The list can be exponentially longer than the internal tree (for
    /// example `σ^-n(0Ω)` has 2^n cylinders); check `cylinder_count` first when
    /// the set may be large.
    pub fn words(&self) -> Vec<Word> {
        let mut ws: Vec<Word> = tree::cylinders(self.root).into_iter().map(Word::from_bits).collect();
        ws.sort();
        ws
    }

    pub fn cylinder_count(&self) -> u64 {
        tree::cylinder_count(self.root)
    }

    pub fn is_empty(&self) -> bool {
        self.root == EMPTY
    }

    pub fn is_full(&self) -> bool {
        self.root == FULL
    }

    /// Length of the longest canonical word; membership is decided by that many bits.
    pub fn depth(&self) -> usize {
        tree::depth(self.root)
    }

    pub fn measure(&self, m: &MeasureSpec) -> Rational {
        m.of_node(self.root)
    }

    pub fn uniform_measure(&self) -> Rational {
        self.measure(&MeasureSpec::Uniform)
    }

    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet::from_node(tree::apply(BinOp::Union, self.root, other.root))
    }

    pub fn intersect(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet::from_node(tree::apply(BinOp::Intersect, self.root, other.root))
    }

    pub fn difference(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet::from_node(tree::apply(BinOp::Difference, self.root, other.root))
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet::from_node(tree::complement(self.root))
    }

    pub fn is_subset(&self, other: &ClopenSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> bool {
        self.intersect(other).is_empty()
    }

    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a ClopenSet>) -> ClopenSet {
        sets.into_iter().fold(ClopenSet::empty(), |acc, s| acc.union(s))
    }

    pub fn intersect_all<'a>(sets: impl IntoIterator<Item = &'a ClopenSet>) -> ClopenSet {
        sets.into_iter().fold(ClopenSet::full(), |acc, s| acc.intersect(s))
    }

    /// `{xw : w ∈ self}`.
    pub fn concat_prefix(&self, x: &Word) -> ClopenSet {
        ClopenSet::from_node(tree::path(x.bits(), self.root))
    }

    /// `{xω : x a cylinder of self, ω ∈ tail}`, the union of `tail.concat_prefix(x)`
    /// over the canonical words `x` of `self`.
    pub fn graft(&self, tail: &ClopenSet) -> ClopenSet {
        ClopenSet::from_node(tree::graft(self.root, tail.root))
    }

    /// `⋂ {shift_section(y) : |y| = len}`.
    pub fn section_meet(&self, len: usize) -> ClopenSet {
        ClopenSet::from_node(tree::meet_at_depth(self.root, len))
    }

    /// The section `{ω : yω ∈ self}`.
    pub fn shift_section(&self, y: &Word) -> ClopenSet {
        ClopenSet::from_node(tree::descend(self.root, y.bits()))
    }

    /// `{bω : b ∈ {0,1}, ω ∈ self}`, the shift preimage.
    pub fn prepend_any_bit(&self) -> ClopenSet {
        ClopenSet::from_node(tree::split(self.root, self.root))
    }

    /// `Some(true)`/`Some(false)` when every/no sequence extending `bits` is
    /// in the set; `None` when `bits` is too short to tell.
    pub fn decide(&self, bits: &[bool]) -> Option<bool> {
        tree::decide(self.root, bits)
    }

    /// Membership of a sequence given by a prefix of at least `depth()` bits.
    pub fn contains_prefix(&self, bits: &[bool]) -> bool {
        self.decide(bits)
            .unwrap_or_else(|| panic!("{} bits cannot decide a set of depth {}", bits.len(), self.depth()))
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        let prefix = p.prefix_of(self.depth());
        self.contains_prefix(prefix.bits())
    }

    /// Sequences whose first `depth` bits, read as a binary integer, lie in
    /// `[start, end)`. Bounds beyond `2^depth` are clamped.
    pub fn dyadic_range(start: &BigUint, end: &BigUint, depth: usize) -> ClopenSet {
        fn rec(lo: &BigUint, size_log: usize, start: &BigUint, end: &BigUint) -> Node {
            let hi = lo + (BigUint::one() << size_log);
            if start <= lo && &hi <= end {
                return FULL;
            }
            if &hi <= start || end <= lo || size_log == 0 {
                return EMPTY;
            }
            let mid = lo + (BigUint::one() << (size_log - 1));
            let z = rec(lo, size_log - 1, start, end);
            let o = rec(&mid, size_log - 1, start, end);
            tree::split(z, o)
        }
        if start >= end {
            return ClopenSet::empty();
        }
        ClopenSet::from_node(rec(&BigUint::zero(), depth, start, end))
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cylinder_count() > 64 {
            return write!(f, "ClopenSet({} cylinders, depth {})", self.cylinder_count(), self.depth());
        }
        f.debug_set().entries(self.words()).finish()
    }
}

impl Serialize for ClopenSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.words())
    }
}

impl<'de> Deserialize<'de> for ClopenSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let words = Vec::<Word>::deserialize(deserializer)?;
        Ok(normalize(words))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::rational::rat;

    fn shown(s: &ClopenSet) -> Vec<String> {
        s.words().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn graft_matches_union_of_concats() {
        let a = ClopenSet::of(&["0", "10"]);
        let tail = ClopenSet::of(&["1", "00"]);
        let by_words = ClopenSet::union_all(&a.words().iter().map(|x| tail.concat_prefix(x)).collect::<Vec<_>>());
        assert_eq!(a.graft(&tail), by_words);
        assert_eq!(ClopenSet::empty().graft(&tail), ClopenSet::empty());
        assert_eq!(ClopenSet::full().graft(&tail), tail);
    }

    #[test]
    fn section_meet_matches_explicit_intersection() {
        let a = ClopenSet::of(&["0", "10", "1101"]);
        for len in 0..4 {
            let explicit = Word::all_of_length(len).fold(ClopenSet::full(), |acc, y| acc.intersect(&a.shift_section(&y)));
            assert_eq!(a.section_meet(len), explicit, "len={len}");
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(shown(&ClopenSet::of(&["0", "01"])), ["0"]);
        assert_eq!(shown(&ClopenSet::of(&["0", "1"])), [""]);
        assert!(ClopenSet::of(&[]).is_empty());
        assert_eq!(shown(&ClopenSet::of(&["11", "0", "10"])), [""]);
        assert_eq!(shown(&ClopenSet::of(&["10", "00", "011"])), ["00", "10", "011"]);
    }

    #[test]
    fn measure_examples() {
        let u = MeasureSpec::Uniform;
        assert_eq!(ClopenSet::of(&["0"]).measure(&u), rat(1, 2));
        assert_eq!(ClopenSet::of(&["00", "01", "10"]).measure(&u), rat(3, 4));
        let b = MeasureSpec::bernoulli(rat(1, 3)).unwrap();
        assert_eq!(ClopenSet::of(&["0"]).measure(&b), rat(2, 3));
    }

    #[test]
    fn boolean_examples() {
        let a = ClopenSet::of(&["0"]);
        assert_eq!(a.intersect(&ClopenSet::of(&["01", "1"])), ClopenSet::of(&["01"]));
        assert_eq!(a.complement(), ClopenSet::of(&["1"]));
        assert_eq!(ClopenSet::of(&["00"]).union(&ClopenSet::of(&["01"])), a);
    }

    #[test]
    fn concat_prefix_examples() {
        assert_eq!(ClopenSet::full().concat_prefix(&"0".into()), ClopenSet::of(&["0"]));
        assert_eq!(ClopenSet::of(&["0"]).concat_prefix(&"1".into()), ClopenSet::of(&["10"]));
        assert_eq!(ClopenSet::of(&["0", "1"]).concat_prefix(&"01".into()), ClopenSet::of(&["01"]));
    }

    #[test]
    fn shift_section_examples() {
        assert!(ClopenSet::of(&["0"]).shift_section(&"0".into()).is_full());
        assert_eq!(ClopenSet::of(&["0", "10"]).shift_section(&"1".into()), ClopenSet::of(&["0"]));
        assert!(ClopenSet::of(&["0"]).shift_section(&"1".into()).is_empty());
    }

    #[test]
    fn point_membership_examples() {
        assert!(ClopenSet::of(&["0"]).contains_point(&Point::explicit("", false)));
        assert!(!ClopenSet::of(&["1"]).contains_point(&Point::periodic("", "01")));
        assert!(ClopenSet::full().contains_point(&Point::seeded(1)));
        assert!(!ClopenSet::empty().contains_point(&Point::seeded(1)));
    }

    #[test]
    fn dyadic_range_matches_enumeration() {
        let s = ClopenSet::dyadic_range(&BigUint::from(3u32), &BigUint::from(11u32), 4);
        let expected = normalize((3..11).map(|v| Word::from_index(v, 4)));
        assert_eq!(s, expected);
        assert_eq!(s.uniform_measure(), rat(8, 16));
    }

    #[test]
    fn shift_preimage_stays_small() {
        let mut s = ClopenSet::of(&["0"]);
        for _ in 0..40 {
            s = s.prepend_any_bit();
        }
        assert_eq!(s.depth(), 41);
        assert_eq!(s.uniform_measure(), rat(1, 2));
        assert_eq!(s.cylinder_count(), 1 << 40);
    }

    #[test]
    fn wire_format_normalizes() {
        let s: ClopenSet = serde_json::from_str(r#"["1","0","01"]"#).unwrap();
        assert!(s.is_full());
        assert_eq!(serde_json::to_string(&ClopenSet::of(&["10", "0"])).unwrap(), r#"["0","10"]"#);
    }
}
