//! Constructive effective ergodic theory on Cantor space.
//!
//! The crate works with clopen sets (finite unions of cylinders) in exact
//! rational arithmetic, computable measure-preserving maps given by their
//! cylinder preimages, and the cover constructions that show invariant cores
//! of small open sets are effectively null. Each cover comes with a
//! [`covers::CoverCertificate`] whose measure bounds are re-checkable from the
//! stage sets alone.
//!
//! Modules:
//! - [`cantor`]: words, clopen sets, measures, points, enumerated open sets.
//! - [`transforms`]: shift, odometer, bidirectional shift, irrational rotation.
//! - [`covers`]: Kučera-style covers and their certificates.
//! - [`birkhoff`]: orbit frequencies, exceedance sets, lower semicomputable averages.
//! - [`lambalgen`]: finite-coordinate product construction along orbits.

pub mod birkhoff;
pub mod cantor;
pub mod covers;
pub mod error;
pub mod lambalgen;
pub mod transforms;

pub use cantor::{
    normalize, ClopenSet, ComputableReal, EffOpen, EffOpenDescriptor, MeasureSpec, Point, Rational, Word,
};
pub use covers::{Budgets, CoverCertificate};
pub use error::{Error, ErrorKind, Result};
pub use lambalgen::{ProductClopen, ProductCylinder, ProductPoint};
pub use transforms::{TransformDescriptor, TransformSpec};
