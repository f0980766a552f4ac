//! Computable measure-preserving maps of Cantor space, presented by the
//! preimages of cylinders together with a prefix-monotone forward map.

mod bidirectional;
mod builtin;
mod orbit;
mod rotation;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use bidirectional::{
    embed_bidirectional, serde_assignment, serde_assignment_opt, shift_assignment, span, word_assignment,
    BiAssignment, BiIndexMap,
};
pub use builtin::{BidirectionalShift, Identity, Odometer, Shift};
pub use orbit::{apply_point, apply_point_with_budget, Orbit, ORBIT_INPUT_BUDGET};
pub use rotation::Rotation;

use crate::cantor::rational::{serde_rational, Rational};
use crate::cantor::{ClopenSet, ComputableReal, MeasureSpec, Word};
use crate::error::{Error, Result};

/// A map whose cylinder preimages are clopen and computed exactly.
pub trait ExactMap: Send + Sync {
    /// `T^-1(wΩ)`.
    fn preimage_cylinder(&self, w: &Word) -> ClopenSet;

    /// `T^-1(s)`; the default unions the cylinder preimages of `s`.
    fn preimage_set(&self, s: &ClopenSet) -> ClopenSet {
        ClopenSet::union_all(&s.words().iter().map(|w| self.preimage_cylinder(w)).collect::<Vec<_>>())
    }

    /// Prefix-monotone evaluation: the bits of `T(ω)` fixed by the prefix `input` of `ω`.
    fn forward(&self, input: &[bool]) -> Vec<bool>;
}

/// A map whose cylinder preimages are only approximable from inside and outside.
pub trait ApproxMap: Send + Sync {
    /// Clopen subset of `T^-1(wΩ)` within `2^-precision` of the outer set.
    fn preimage_inner(&self, w: &Word, precision: usize) -> ClopenSet;
    /// Clopen superset of `T^-1(wΩ)`.
    fn preimage_outer(&self, w: &Word, precision: usize) -> ClopenSet;
    fn forward(&self, input: &[bool]) -> Vec<bool>;
}

#[derive(Clone)]
pub enum TransformKind {
    ClopenExact(Arc<dyn ExactMap>),
    Approximable(Arc<dyn ApproxMap>),
}

/// A named transform. Cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct TransformSpec {
    name: String,
    kind: TransformKind,
}

impl fmt::Debug for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            TransformKind::ClopenExact(_) => "ClopenExact",
            TransformKind::Approximable(_) => "Approximable",
        };
        write!(f, "TransformSpec({}, {kind})", self.name)
    }
}

impl TransformSpec {
    pub fn exact(name: impl Into<String>, map: impl ExactMap + 'static) -> Self {
        TransformSpec {
            name: name.into(),
            kind: TransformKind::ClopenExact(Arc::new(map)),
        }
    }

    pub fn approximable(name: impl Into<String>, map: impl ApproxMap + 'static) -> Self {
        TransformSpec {
            name: name.into(),
            kind: TransformKind::Approximable(Arc::new(map)),
        }
    }

    /// An exact transform from plain functions. Handy for ad-hoc or
    /// deliberately broken maps in tests.
    pub fn from_fns<P, F>(name: impl Into<String>, preimage: P, forward: F) -> Self
    where
        P: Fn(&Word) -> ClopenSet + Send + Sync + 'static,
        F: Fn(&[bool]) -> Vec<bool> + Send + Sync + 'static,
    {
        struct FnMap<P, F>(P, F);
        impl<P, F> ExactMap for FnMap<P, F>
        where
            P: Fn(&Word) -> ClopenSet + Send + Sync,
            F: Fn(&[bool]) -> Vec<bool> + Send + Sync,
        {
            fn preimage_cylinder(&self, w: &Word) -> ClopenSet {
                (self.0)(w)
            }
            fn forward(&self, input: &[bool]) -> Vec<bool> {
                (self.1)(input)
            }
        }
        TransformSpec::exact(name, FnMap(preimage, forward))
    }

    pub fn shift() -> Self {
        TransformSpec::exact("shift", Shift)
    }

    pub fn odometer() -> Self {
        TransformSpec::exact("odometer", Odometer)
    }

    pub fn bidirectional_shift(n: i64) -> Self {
        TransformSpec::exact(format!("bidirectional_shift({n})"), BidirectionalShift { n })
    }

    pub fn rotation(alpha: ComputableReal) -> Self {
        TransformSpec::approximable(format!("rotation({alpha})"), Rotation::new(alpha))
    }

    pub fn identity() -> Self {
        TransformSpec::exact("identity", Identity)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &TransformKind {
        &self.kind
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, TransformKind::ClopenExact(_))
    }

    pub(crate) fn exact_map(&self) -> Result<&dyn ExactMap> {
        match &self.kind {
            TransformKind::ClopenExact(m) => Ok(m.as_ref()),
            TransformKind::Approximable(_) => Err(Error::NotExact(self.name.clone())),
        }
    }

    pub fn forward(&self, input: &[bool]) -> Vec<bool> {
        match &self.kind {
            TransformKind::ClopenExact(m) => m.forward(input),
            TransformKind::Approximable(m) => m.forward(input),
        }
    }
}

/// JSON transform descriptor, e.g. `{"name":"bidirectional_shift","n":2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum TransformDescriptor {
    Shift,
    Odometer,
    BidirectionalShift {
        n: i64,
    },
    Rotation {
        #[serde(default = "ComputableReal::sqrt2_minus_1")]
        alpha: ComputableReal,
        /// Default precision for approximate preimages.
        #[serde(default = "default_precision")]
        precision: usize,
    },
    Identity,
}

fn default_precision() -> usize {
    8
}

impl TransformDescriptor {
    /// Descriptor with default parameters for a bare name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "shift" => Ok(TransformDescriptor::Shift),
            "odometer" => Ok(TransformDescriptor::Odometer),
            "identity" => Ok(TransformDescriptor::Identity),
            "rotation" => Ok(TransformDescriptor::Rotation {
                alpha: ComputableReal::sqrt2_minus_1(),
                precision: default_precision(),
            }),
            _ => {
                if let Some(n) = name
                    .strip_prefix("bidirectional_shift(")
                    .and_then(|r| r.strip_suffix(')'))
                {
                    let n = n.parse().map_err(|_| Error::UnknownTransform(name.to_string()))?;
                    return Ok(TransformDescriptor::BidirectionalShift { n });
                }
                Err(Error::UnknownTransform(name.to_string()))
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Malformed(format!("transform descriptor: {e}")))?;
        if let Some(name) = v.get("name").and_then(|n| n.as_str()) {
            if !["shift", "odometer", "bidirectional_shift", "rotation", "identity"].contains(&name) {
                return Err(Error::UnknownTransform(name.to_string()));
            }
        }
        serde_json::from_value(v).map_err(|e| Error::Malformed(format!("transform descriptor: {e}")))
    }

    pub fn build(&self) -> TransformSpec {
        match self {
            TransformDescriptor::Shift => TransformSpec::shift(),
            TransformDescriptor::Odometer => TransformSpec::odometer(),
            TransformDescriptor::BidirectionalShift { n } => TransformSpec::bidirectional_shift(*n),
            TransformDescriptor::Rotation { alpha, .. } => TransformSpec::rotation(alpha.clone()),
            TransformDescriptor::Identity => TransformSpec::identity(),
        }
    }
}

/// Built-in transform by name (`shift`, `odometer`, `bidirectional_shift(n)`,
/// `rotation`, `identity`).
pub fn builtin(name: &str) -> Result<TransformSpec> {
    TransformDescriptor::by_name(name).map(|d| d.build())
}

/// Exact `T^-1(s)`.
pub fn preimage_clopen(t: &TransformSpec, s: &ClopenSet) -> Result<ClopenSet> {
    Ok(t.exact_map()?.preimage_set(s))
}

/// Inner and outer clopen approximations of `T^-1(s)`; the measure gap is at
/// most `|s| · 2^-precision`. Exact transforms return the exact preimage twice.
pub fn preimage_approx(t: &TransformSpec, s: &ClopenSet, precision: usize) -> (ClopenSet, ClopenSet) {
    match &t.kind {
        TransformKind::ClopenExact(m) => {
            let p = m.preimage_set(s);
            (p, p)
        }
        TransformKind::Approximable(m) => {
            if s.is_empty() || s.is_full() {
                return (*s, *s);
            }
            let words = s.words();
            let inner: Vec<ClopenSet> = words.iter().map(|w| m.preimage_inner(w, precision)).collect();
            let outer: Vec<ClopenSet> = words.iter().map(|w| m.preimage_outer(w, precision)).collect();
            (ClopenSet::union_all(&inner), ClopenSet::union_all(&outer))
        }
    }
}

/// `T^-i(s)`.
pub fn iterate_preimage(t: &TransformSpec, s: &ClopenSet, i: usize) -> Result<ClopenSet> {
    let m = t.exact_map()?;
    Ok((0..i).fold(*s, |acc, _| m.preimage_set(&acc)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureViolation {
    pub word: Word,
    #[serde(with = "serde_rational")]
    pub preimage_measure: Rational,
    #[serde(with = "serde_rational")]
    pub expected: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub transform: String,
    pub depth: usize,
    pub measure: MeasureSpec,
    pub words_checked: u64,
    pub violations: Vec<MeasureViolation>,
    pub passed: bool,
}

/// Checks `μ(T^-1(wΩ)) = μ(wΩ)` exactly for every `|w| <= depth`.
pub fn check_measure_preserving(t: &TransformSpec, depth: usize, m: &MeasureSpec) -> Result<MeasureReport> {
    let map = t.exact_map()?;
    let mut violations = Vec::new();
    let mut checked = 0;
    for w in Word::all_up_to(depth) {
        checked += 1;
        let got = map.preimage_cylinder(&w).measure(m);
        let expected = m.cylinder(&w);
        if got != expected {
            violations.push(MeasureViolation {
                word: w,
                preimage_measure: got,
                expected,
            });
        }
    }
    Ok(MeasureReport {
        transform: t.name.clone(),
        depth,
        measure: m.clone(),
        words_checked: checked,
        passed: violations.is_empty(),
        violations,
    })
}
