//! Choosing orbit points coordinate by coordinate so that a tuple escapes a
//! small clopen subset of the product space `Ω^ℕ`.
//!
//! Coordinate `i` is fixed to an orbit point outside the threshold set
//! `V_i = {α : μ(U_α) > (i+2)/(i+3)}` of the current section `U`. By Markov's
//! inequality `μ(V_i) <= ((i+1)/(i+2)) / ((i+2)/(i+3)) < 1`, and every
//! section chosen this way has measure at most `(i+2)/(i+3)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cantor::rational::{serde_rational_vec, Rational};
use crate::cantor::{ClopenSet, Point, Word};
use crate::error::{Error, Result};
use crate::transforms::{apply_point, Orbit, TransformSpec};

/// Constraints `coordinate ↦ word`; JSON `{"0": "01", "2": "1"}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProductCylinder {
    pub constraints: BTreeMap<usize, Word>,
}

impl ProductCylinder {
    pub fn new(constraints: impl IntoIterator<Item = (usize, Word)>) -> Self {
        ProductCylinder {
            constraints: constraints.into_iter().collect(),
        }
    }

    pub fn measure(&self) -> Rational {
        let bits: usize = self.constraints.values().map(Word::len).sum();
        Rational::new(BigInt::one(), BigInt::one() << bits)
    }

    /// `self ⊆ other`.
    fn within(&self, other: &ProductCylinder) -> bool {
        other
            .constraints
            .iter()
            .all(|(c, w)| self.constraints.get(c).is_some_and(|v| w.is_prefix_of(v)))
    }
}

/// A finite union of product cylinders, with subsumed cylinders removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ProductCylinder>", into = "Vec<ProductCylinder>")]
pub struct ProductClopen {
    cylinders: Vec<ProductCylinder>,
}

impl From<Vec<ProductCylinder>> for ProductClopen {
    fn from(cylinders: Vec<ProductCylinder>) -> Self {
        ProductClopen::new(cylinders)
    }
}

impl From<ProductClopen> for Vec<ProductCylinder> {
    fn from(u: ProductClopen) -> Self {
        u.cylinders
    }
}

impl ProductClopen {
    pub fn new(cylinders: impl IntoIterator<Item = ProductCylinder>) -> Self {
        let mut all: Vec<ProductCylinder> = cylinders
            .into_iter()
            .map(|mut c| {
                c.constraints.retain(|_, w| !w.is_empty());
                c
            })
            .collect();
        all.sort();
        all.dedup();
        let kept: Vec<ProductCylinder> = all
            .iter()
            .enumerate()
            .filter(|(i, c)| !all.iter().enumerate().any(|(j, d)| j != *i && c.within(d)))
            .map(|(_, c)| c.clone())
            .collect();
        ProductClopen { cylinders: kept }
    }

    pub fn empty() -> Self {
        ProductClopen::default()
    }

    pub fn cylinders(&self) -> &[ProductCylinder] {
        &self.cylinders
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    /// One more than the largest constrained coordinate.
    pub fn coordinates(&self) -> usize {
        self.cylinders
            .iter()
            .filter_map(|c| c.constraints.keys().next_back())
            .map(|&c| c + 1)
            .max()
            .unwrap_or(0)
    }

    /// Longest constraint at coordinate `c`.
    pub fn depth_at(&self, c: usize) -> usize {
        self.cylinders
            .iter()
            .filter_map(|cyl| cyl.constraints.get(&c))
            .map(Word::len)
            .max()
            .unwrap_or(0)
    }

    fn has_full_cylinder(&self) -> bool {
        self.cylinders.iter().any(|c| c.constraints.is_empty())
    }

    /// Points whose coordinate 0 starts with `bit`, with that bit removed.
    fn bit_section(&self, bit: bool) -> ProductClopen {
        ProductClopen::new(self.cylinders.iter().filter_map(|c| {
            let mut c = c.clone();
            match c.constraints.get(&0) {
                None => {}
                Some(w) if w.bit(0) != bit => return None,
                Some(w) if w.len() == 1 => {
                    c.constraints.remove(&0);
                }
                Some(w) => {
                    let rest = w.suffix_from(1);
                    c.constraints.insert(0, rest);
                }
            }
            Some(c)
        }))
    }

    /// Drops coordinate 0, which must be unconstrained, and renumbers the rest.
    fn reindexed(&self) -> ProductClopen {
        ProductClopen::new(self.cylinders.iter().map(|c| {
            debug_assert!(!c.constraints.contains_key(&0));
            ProductCylinder::new(c.constraints.iter().map(|(&k, w)| (k - 1, w.clone())))
        }))
    }

    pub fn contains(&self, p: &ProductPoint) -> bool {
        self.cylinders.iter().any(|c| {
            c.constraints
                .iter()
                .all(|(&k, w)| w.is_prefix_of(&p.coordinate(k).prefix_of(w.len())))
        })
    }
}

/// A point of `Ω^ℕ`: the listed coordinates, then `fill` forever in every
/// further coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub coords: Vec<Point>,
    #[serde(with = "crate::cantor::bit")]
    pub fill: bool,
}

impl ProductPoint {
    pub fn coordinate(&self, k: usize) -> Point {
        self.coords
            .get(k)
            .cloned()
            .unwrap_or_else(|| Point::explicit("", self.fill))
    }
}

/// Exact measure under the uniform product measure.
pub fn product_measure(u: &ProductClopen) -> Rational {
    fn rec(u: &ProductClopen, memo: &mut HashMap<ProductClopen, Rational>) -> Rational {
        if u.is_empty() {
            return Rational::zero();
        }
        if u.has_full_cylinder() {
            return Rational::one();
        }
        if let Some(m) = memo.get(u) {
            return m.clone();
        }
        let m = if u.depth_at(0) == 0 {
            rec(&u.reindexed(), memo)
        } else {
            (rec(&u.bit_section(false), memo) + rec(&u.bit_section(true), memo)) / Rational::from_integer(2.into())
        };
        memo.insert(u.clone(), m.clone());
        m
    }
    rec(u, &mut HashMap::new())
}

/// `U_w = {(α_1, α_2, …) : (α_0, α_1, …) ∈ U for α_0 ∈ wΩ}`, renumbered from 0.
pub fn section(u: &ProductClopen, w: &Word) -> Result<ProductClopen> {
    let required = u.depth_at(0);
    if w.len() < required {
        return Err(Error::WordTooShort { required, got: w.len() });
    }
    let mut s = u.clone();
    for &b in w.bits() {
        if s.depth_at(0) == 0 {
            break;
        }
        s = s.bit_section(b);
    }
    Ok(s.reindexed())
}

/// `{α_0 : μ(U_{α_0}) > t}` as a clopen set of depth at most `depth`.
pub fn threshold_set(u: &ProductClopen, t: &Rational, depth: usize) -> Result<ClopenSet> {
    let required = u.depth_at(0);
    if depth < required {
        return Err(Error::WordTooShort { required, got: depth });
    }
    fn rec(u: &ProductClopen, t: &Rational, memo: &mut HashMap<ProductClopen, ClopenSet>) -> ClopenSet {
        if let Some(s) = memo.get(u) {
            return *s;
        }
        let s = if u.depth_at(0) == 0 {
            if product_measure(&u.reindexed()) > *t {
                ClopenSet::full()
            } else {
                ClopenSet::empty()
            }
        } else {
            let z = rec(&u.bit_section(false), t, memo).concat_prefix(&Word::from("0"));
            let o = rec(&u.bit_section(true), t, memo).concat_prefix(&Word::from("1"));
            z.union(&o)
        };
        memo.insert(u.clone(), s);
        s
    }
    Ok(rec(u, t, &mut HashMap::new()))
}

/// Result of a successful construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambalgenReport {
    /// `n_i` with `T^(n_i)(ω_i)` chosen at coordinate `i`.
    pub indices: Vec<u64>,
    /// `(i+2)/(i+3)`.
    #[serde(with = "serde_rational_vec")]
    pub thresholds: Vec<Rational>,
    /// `μ(V_i)`.
    #[serde(with = "serde_rational_vec")]
    pub threshold_measures: Vec<Rational>,
    /// Measure of the section before coordinate `i` is fixed, then of the final one.
    #[serde(with = "serde_rational_vec")]
    pub section_measures: Vec<Rational>,
    /// The fixed prefix of `T^(n_i)(ω_i)`.
    pub prefixes: Vec<Word>,
    /// The chosen tuple lies outside `u`, checked exactly.
    pub verified: bool,
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Finds `n_0, …, n_{m−1}` with `(T^(n_0)ω_0, …, T^(n_{m−1})ω_{m−1}, …) ∉ u`,
/// scanning `n = 0..=budget` at each coordinate.
pub fn lambalgen_construct(u: &ProductClopen, pts: &[Point], t: &TransformSpec, budget: u64) -> Result<LambalgenReport> {
    let mu = product_measure(u);
    if mu > ratio(1, 2) {
        return Err(Error::precondition(format!("measure(u) = {mu} exceeds 1/2")));
    }
    if u.coordinates() > pts.len() {
        return Err(Error::precondition(format!(
            "u constrains {} coordinates but only {} points were given",
            u.coordinates(),
            pts.len()
        )));
    }
    for p in pts {
        p.validate()?;
    }
    let mut report = LambalgenReport {
        indices: Vec::new(),
        thresholds: Vec::new(),
        threshold_measures: Vec::new(),
        section_measures: Vec::new(),
        prefixes: Vec::new(),
        verified: false,
    };
    let mut current = u.clone();
    for (i, p) in pts.iter().enumerate() {
        let here = product_measure(&current);
        if here > ratio(i + 1, i + 2) {
            return Err(Error::precondition(format!(
                "section measure {here} at coordinate {i} exceeds {}",
                ratio(i + 1, i + 2)
            )));
        }
        report.section_measures.push(here);
        let depth = u.depth_at(i);
        let threshold = ratio(i + 2, i + 3);
        let v = threshold_set(&current, &threshold, depth)?;
        if v.is_full() {
            return Err(Error::FullThresholdSet { coordinate: i });
        }
        let v_measure = v.uniform_measure();
        let mut orbit = Orbit::new(t, p.clone(), depth);
        let mut seen = Vec::new();
        let mut chosen = None;
        for n in 0..=budget {
            let w = orbit.next_prefix()?;
            if !v.contains_prefix(w.bits()) {
                chosen = Some((n, w));
                break;
            }
            seen.push(w);
        }
        let Some((n, w)) = chosen else {
            let cycle_detected = seen.iter().skip(1).any(|w| *w == seen[0]);
            return Err(Error::PointTrapped {
                coordinate: i,
                v_measure: Box::new(v_measure),
                orbit: seen,
                cycle_detected,
            });
        };
        current = section(&current, &w)?;
        report.indices.push(n);
        report.thresholds.push(threshold);
        report.threshold_measures.push(v_measure);
        report.prefixes.push(w);
    }
    report.section_measures.push(product_measure(&current));
    report.verified = verify_outside(u, pts, t, &report.indices)?;
    Ok(report)
}

/// Independently recomputes `T^(n_i)(ω_i)` and tests membership in `u`;
/// true when the tuple is outside.
pub fn verify_outside(u: &ProductClopen, pts: &[Point], t: &TransformSpec, indices: &[u64]) -> Result<bool> {
    let coords = pts
        .iter()
        .zip(indices)
        .enumerate()
        .map(|(i, (p, &n))| {
            let w = apply_point(t, p, n, u.depth_at(i))?;
            Ok(Point::Explicit { prefix: w, fill: false })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(!u.contains(&ProductPoint { coords, fill: false }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::rational::rat;

    fn cyl(pairs: &[(usize, &str)]) -> ProductCylinder {
        ProductCylinder::new(pairs.iter().map(|&(c, w)| (c, Word::from(w))))
    }

    fn clopen(cyls: &[&[(usize, &str)]]) -> ProductClopen {
        ProductClopen::new(cyls.iter().map(|c| cyl(c)))
    }

    #[test]
    fn measure_examples() {
        assert_eq!(product_measure(&clopen(&[&[(0, "0")]])), rat(1, 2));
        assert_eq!(product_measure(&clopen(&[&[(0, "0")], &[(1, "0")]])), rat(3, 4));
        assert_eq!(product_measure(&ProductClopen::empty()), rat(0, 1));
        assert_eq!(product_measure(&clopen(&[&[(0, "0")], &[(1, "00")]])), rat(5, 8));
    }

    #[test]
    fn normalization_drops_subsumed_cylinders() {
        let u = clopen(&[&[(0, "0")], &[(0, "01"), (1, "1")], &[(0, "0")]]);
        assert_eq!(u.cylinders(), &[cyl(&[(0, "0")])]);
    }

    #[test]
    fn section_examples() {
        let u = clopen(&[&[(0, "0")]]);
        let full = section(&u, &"0".into()).unwrap();
        assert_eq!(product_measure(&full), rat(1, 1));
        assert!(section(&u, &"1".into()).unwrap().is_empty());
        let u = clopen(&[&[(0, "0"), (1, "1")], &[(0, "1")]]);
        assert_eq!(section(&u, &"0".into()).unwrap(), clopen(&[&[(0, "1")]]));
        let deep = clopen(&[&[(0, "01")]]);
        assert!(matches!(
            section(&deep, &"0".into()),
            Err(Error::WordTooShort { required: 2, got: 1 })
        ));
    }

    #[test]
    fn measure_is_the_average_of_sections() {
        let u = clopen(&[&[(0, "01"), (1, "1")], &[(0, "1"), (2, "00")], &[(1, "0")]]);
        for d in 2..=4 {
            let avg = Word::all_of_length(d)
                .map(|w| product_measure(&section(&u, &w).unwrap()))
                .fold(Rational::zero(), |a, b| a + b)
                / Rational::from_integer(BigInt::one() << d);
            assert_eq!(avg, product_measure(&u));
        }
    }

    #[test]
    fn threshold_examples() {
        let u = clopen(&[&[(0, "0")]]);
        let v = threshold_set(&u, &rat(2, 3), 1).unwrap();
        assert_eq!(v, ClopenSet::of(&["0"]));
        assert!(threshold_set(&ProductClopen::empty(), &rat(0, 1), 0).unwrap().is_empty());
        let u = clopen(&[&[(0, "01"), (1, "1")], &[(0, "1"), (1, "00")]]);
        assert!(product_measure(&u) <= rat(1, 2));
        let v = threshold_set(&u, &rat(2, 3), 2).unwrap();
        assert!(v.uniform_measure() <= rat(3, 4));
        assert!(threshold_set(&u, &rat(2, 3), 1).is_err());
    }

    #[test]
    fn construct_examples() {
        let u = clopen(&[&[(0, "0")]]);
        let r = lambalgen_construct(&u, &[Point::zeros()], &TransformSpec::odometer(), 4).unwrap();
        assert_eq!(r.indices, [1]);
        assert_eq!(r.prefixes, [Word::from("1")]);
        assert!(r.verified);

        let r = lambalgen_construct(&ProductClopen::empty(), &[Point::zeros(), Point::seeded(3)], &TransformSpec::odometer(), 4)
            .unwrap();
        assert_eq!(r.indices, [0, 0]);
        assert!(r.verified);

        let u = clopen(&[&[(0, "0")], &[(1, "00")]]);
        let err = lambalgen_construct(&u, &[Point::zeros(), Point::zeros()], &TransformSpec::odometer(), 4).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn trapped_point_reported() {
        // The shift fixes 000…, which stays inside V_0 = {"0"}.
        let u = clopen(&[&[(0, "0")]]);
        let err = lambalgen_construct(&u, &[Point::zeros()], &TransformSpec::shift(), 5).unwrap_err();
        match err {
            Error::PointTrapped {
                coordinate,
                v_measure,
                orbit,
                cycle_detected,
            } => {
                assert_eq!(coordinate, 0);
                assert_eq!(*v_measure, rat(1, 2));
                assert_eq!(orbit.len(), 6);
                assert!(cycle_detected);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn json_shape() {
        let u = clopen(&[&[(0, "0"), (1, "1")], &[(1, "00")]]);
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(text, r#"[{"0":"0","1":"1"},{"1":"00"}]"#);
        let back: ProductClopen = serde_json::from_str(&text).unwrap();
        assert_eq!(back, u);
    }
}
