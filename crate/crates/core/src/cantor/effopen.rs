use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::clopen::{normalize, ClopenSet};
use super::measure::MeasureSpec;
use super::point::Point;
use super::rational::{floor_to_int, serde_rational_opt, Rational};
use super::real::ComputableReal;
use super::Word;

/// An effectively open set: a union of cylinders from a (possibly infinite)
/// enumeration.
///
/// Pulled cylinders are cached, so the clopen prefix at fuel `f` never
/// shrinks as `f` grows. Generators are single-owner; snapshot a prefix
/// before sharing across threads.
pub struct EffOpen {
    source: Source,
    pulled: Vec<Word>,
    exhausted: bool,
    /// Caller-asserted bound `μ(set) <= r`; never checked for enumerated sets.
    pub assumed_measure_upper: Option<Rational>,
}

enum Source {
    Finite(ClopenSet, std::vec::IntoIter<Word>),
    Enumerated(Box<dyn Iterator<Item = Word> + Send>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Yes,
    /// Not covered by the cylinders pulled so far.
    Unknown,
}

impl EffOpen {
    pub fn finite(set: ClopenSet) -> Self {
        EffOpen {
            source: Source::Finite(set, set.words().into_iter()),
            pulled: Vec::new(),
            exhausted: false,
            assumed_measure_upper: None,
        }
    }

    pub fn enumerated(gen: impl Iterator<Item = Word> + Send + 'static) -> Self {
        EffOpen {
            source: Source::Enumerated(Box::new(gen)),
            pulled: Vec::new(),
            exhausted: false,
            assumed_measure_upper: None,
        }
    }

    pub fn with_assumed_upper(mut self, r: Rational) -> Self {
        self.assumed_measure_upper = Some(r);
        self
    }

    /// The exact set, when the presentation is finite.
    pub fn as_clopen(&self) -> Option<ClopenSet> {
        match &self.source {
            Source::Finite(s, _) => Some(*s),
            Source::Enumerated(_) => None,
        }
    }

    fn pull_to(&mut self, fuel: usize) {
        while self.pulled.len() < fuel && !self.exhausted {
            let next = match &mut self.source {
                Source::Finite(_, it) => it.next(),
                Source::Enumerated(it) => it.next(),
            };
            match next {
                Some(w) => self.pulled.push(w),
                None => self.exhausted = true,
            }
        }
    }

    /// Union of the first `fuel` cylinders (fewer if the enumeration ends).
    pub fn prefix(&mut self, fuel: usize) -> ClopenSet {
        self.pull_to(fuel);
        normalize(&self.pulled[..fuel.min(self.pulled.len())])
    }

    pub fn covered_at_fuel(&mut self, p: &Point, fuel: usize) -> Coverage {
        if self.prefix(fuel).contains_point(p) {
            Coverage::Yes
        } else {
            Coverage::Unknown
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }
}

impl fmt::Debug for EffOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.source {
            Source::Finite(s, _) => format!("Finite({s:?})"),
            Source::Enumerated(_) => "Enumerated".to_string(),
        };
        f.debug_struct("EffOpen")
            .field("source", &kind)
            .field("pulled", &self.pulled.len())
            .field("assumed_measure_upper", &self.assumed_measure_upper)
            .finish()
    }
}

/// Fuel-bounded view: the clopen prefix after `fuel` pulls and its exact
/// measure, a lower bound on the measure of `a`.
pub fn eff_open_prefix(a: &mut EffOpen, fuel: usize, m: &MeasureSpec) -> (ClopenSet, Rational) {
    let s = a.prefix(fuel);
    let mu = s.measure(m);
    (s, mu)
}

/// Enumerates the dyadic cylinders making up the real interval `[0, x)`
/// (Ω read as `[0, 1]` through binary expansion), coarsest first.
pub struct DyadicBelow {
    x: ComputableReal,
    depth: usize,
    covered: BigInt,
    queue: VecDeque<Word>,
    done: bool,
}

impl DyadicBelow {
    pub fn new(x: ComputableReal) -> Self {
        DyadicBelow {
            x,
            depth: 0,
            covered: BigInt::from(0),
            queue: VecDeque::new(),
            done: false,
        }
    }
}

impl Iterator for DyadicBelow {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while self.queue.is_empty() {
            if self.done || self.depth > 4096 {
                return None;
            }
            self.depth += 1;
            let d = self.depth;
            self.covered *= 2;
            let (lo, hi) = self.x.enclose(d + 2);
            let scale = Rational::from_integer(BigInt::from(1) << d);
            let mut cells = floor_to_int(&(&lo * &scale));
            if lo == hi && Rational::from_integer(cells.clone()) == &lo * &scale {
                // x is dyadic at this depth: the last cell lands on x exactly.
                self.done = true;
            }
            let limit = BigInt::from(1) << d;
            if cells > limit {
                cells = limit.clone();
            }
            while self.covered < cells {
                let v: u64 = (&self.covered).try_into().unwrap_or(u64::MAX);
                let w = if d <= 64 {
                    Word::from_index(v, d)
                } else {
                    let bits = (0..d)
                        .map(|i| ((&self.covered >> (d - 1 - i)) & BigInt::from(1)) == BigInt::from(1))
                        .collect();
                    Word::from_bits(bits)
                };
                self.queue.push_back(w);
                self.covered += 1;
            }
            if self.covered >= limit {
                self.done = true;
            }
        }
        self.queue.pop_front()
    }
}

/// JSON form of an effectively open set: an inline word array, or a named
/// generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EffOpenDescriptor {
    Inline(ClopenSet),
    Generator(GeneratorDescriptor),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDescriptor {
    #[serde(flatten)]
    pub generator: Generator,
    #[serde(default, with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub assumed_upper: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum Generator {
    /// Cylinders of `[0, x)`.
    DyadicBelow { x: ComputableReal },
    /// An explicit list pulled in the given order.
    Words { words: Vec<Word> },
}

impl EffOpenDescriptor {
    pub fn build(&self) -> EffOpen {
        match self {
            EffOpenDescriptor::Inline(s) => EffOpen::finite(*s),
            EffOpenDescriptor::Generator(g) => {
                let e = match &g.generator {
                    Generator::DyadicBelow { x } => EffOpen::enumerated(DyadicBelow::new(x.clone())),
                    Generator::Words { words } => EffOpen::enumerated(words.clone().into_iter()),
                };
                match &g.assumed_upper {
                    Some(r) => e.with_assumed_upper(r.clone()),
                    None => e,
                }
            }
        }
    }
}
