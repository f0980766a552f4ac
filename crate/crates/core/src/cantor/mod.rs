//! Words, cylinders, clopen sets and measures on Cantor space.

mod clopen;
mod effopen;
mod measure;
mod point;
pub mod rational;
mod real;
pub(crate) mod tree;
mod word;

pub use clopen::{normalize, ClopenSet};
pub use effopen::{eff_open_prefix, Coverage, DyadicBelow, EffOpen, EffOpenDescriptor, Generator, GeneratorDescriptor};
pub use measure::{MarkovRow, MeasureSpec};
pub use point::{bit, Point};
pub use rational::Rational;
pub use real::ComputableReal;
pub use word::Word;

/// Exact membership of a point in a clopen set.
pub fn contains_point(s: &ClopenSet, p: &Point) -> bool {
    s.contains_point(p)
}

pub fn covered_at_fuel(a: &mut EffOpen, p: &Point, fuel: usize) -> Coverage {
    a.covered_at_fuel(p, fuel)
}
