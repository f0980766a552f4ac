//! Irrational rotation `x ↦ x + α mod 1`, with Ω read as `[0, 1]` through
//! binary expansion.
//!
//! Preimages of cylinders are intervals with irrational endpoints, so they
//! are only approximable: inner and outer clopen sets on a dyadic grid of
//! depth `p + 3`, with α enclosed to width `2^-(p+3)`. Per cylinder the outer
//! set exceeds the inner one by at most two endpoint enclosures plus four
//! grid cells, `6 · 2^-(p+3) < 2^-p`.

use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ApproxMap;
use crate::cantor::rational::{ceil_to_int, floor_to_int, Rational};
use crate::cantor::{ClopenSet, ComputableReal, Word};

#[derive(Debug, Clone)]
pub struct Rotation {
    pub alpha: ComputableReal,
    /// Sharpest enclosure of `alpha` computed so far, with its precision.
    cache: Arc<Mutex<Option<(usize, Rational, Rational)>>>,
}

/// Extra grid bits beyond the requested precision.
pub const GUARD_BITS: usize = 3;

fn scale(q: usize) -> Rational {
    Rational::from_integer(BigInt::one() << q)
}

/// Cells `[start, end)` of the depth-`q` grid taken modulo `2^q`.
fn cells_mod(start: BigInt, end: BigInt, q: usize) -> ClopenSet {
    if end <= start {
        return ClopenSet::empty();
    }
    let modulus = BigInt::one() << q;
    if &end - &start >= modulus {
        return ClopenSet::full();
    }
    let s = start.mod_floor(&modulus);
    let e = &s + (end - start);
    let to_u = |v: &BigInt| v.to_biguint().expect("non-negative");
    if e <= modulus {
        ClopenSet::dyadic_range(&to_u(&s), &to_u(&e), q)
    } else {
        let head = ClopenSet::dyadic_range(&to_u(&s), &to_u(&modulus), q);
        let tail = ClopenSet::dyadic_range(&BigUint::zero(), &to_u(&(e - &modulus)), q);
        head.union(&tail)
    }
}

/// The bits read as a big-endian binary integer.
fn bits_to_uint(bits: &[bool]) -> BigUint {
    // Left-pad to whole bytes so the chunks align with the least significant end.
    let pad = (8 - bits.len() % 8) % 8;
    let bytes: Vec<u8> = std::iter::repeat_n(false, pad)
        .chain(bits.iter().copied())
        .collect::<Vec<_>>()
        .chunks(8)
        .map(|c| c.iter().fold(0u8, |acc, &b| acc << 1 | b as u8))
        .collect();
    BigUint::from_bytes_be(&bytes)
}

/// The real interval `[a, b)` covered by the cylinder `w`.
pub(crate) fn cylinder_interval(w: &Word) -> (Rational, Rational) {
    let v = BigInt::from(bits_to_uint(w.bits()));
    let den = BigInt::one() << w.len();
    (
        Rational::new(v.clone(), den.clone()),
        Rational::new(v + 1, den),
    )
}

impl Rotation {
    pub fn new(alpha: ComputableReal) -> Self {
        Rotation {
            alpha,
            cache: Arc::default(),
        }
    }

    /// `(L, H)` with `L/2^q <= alpha <= H/2^q`, read off a cached sharper
    /// enclosure. For dyadic enclosures the result does not depend on how
    /// sharp the cached one is.
    fn dyadic_enclosure(&self, q: usize) -> (BigInt, BigInt) {
        let mut cache = self.cache.lock().expect("enclosure cache poisoned");
        let stale = cache.as_ref().is_none_or(|(p, _, _)| *p < q);
        if stale {
            let p = cache.as_ref().map_or(q, |(p, _, _)| q.max(2 * p));
            let (lo, hi) = self.alpha.enclose(p);
            *cache = Some((p, lo, hi));
        }
        let (_, lo, hi) = cache.as_ref().expect("filled above");
        (floor_to_int(&(lo * scale(q))), ceil_to_int(&(hi * scale(q))))
    }
}

impl ApproxMap for Rotation {
    fn preimage_inner(&self, w: &Word, precision: usize) -> ClopenSet {
        let q = precision + GUARD_BITS;
        let (a, b) = cylinder_interval(w);
        let (lo, hi) = self.alpha.enclose(q);
        // [a - lo, b - hi) lies inside [a - α, b - α) for every α in [lo, hi].
        let start = ceil_to_int(&((&a - &lo) * scale(q)));
        let end = floor_to_int(&((&b - &hi) * scale(q)));
        cells_mod(start, end, q)
    }

    fn preimage_outer(&self, w: &Word, precision: usize) -> ClopenSet {
        let q = precision + GUARD_BITS;
        let (a, b) = cylinder_interval(w);
        let (lo, hi) = self.alpha.enclose(q);
        let start = floor_to_int(&((&a - &hi) * scale(q)));
        let end = ceil_to_int(&((&b - &lo) * scale(q)));
        cells_mod(start, end, q)
    }

    fn forward(&self, input: &[bool]) -> Vec<bool> {
        // Integer arithmetic on the grid of depth q = m + 2, where the image
        // of the input cylinder is [y0, y1) with y0 = X/2^m + L/2^q.
        let m = input.len();
        let q = m + 2;
        let x = BigInt::from(bits_to_uint(input));
        let (lo, hi) = self.dyadic_enclosure(q);
        let one = BigInt::one() << q;
        let mut y0 = (&x << 2) + lo;
        let mut y1 = ((x + 1) << 2) + hi;
        if y0 >= one {
            y0 -= &one;
            y1 -= &one;
        }
        if y1 >= one {
            // The image straddles 0 = 1 and no bit is settled.
            return Vec::new();
        }
        // floor(y·2^j) is floor(y·2^m) >> (m − j), so the settled bits are the
        // common leading bits of the two m-bit floors.
        let floor_m = |y: BigInt| -> BigUint { (y >> 2u32).to_biguint().expect("alpha is non-negative") };
        let (f0, f1) = (floor_m(y0), floor_m(y1));
        let differ = (&f0 ^ &f1).bits() as usize;
        (1..=m - differ.min(m)).map(|j| f0.bit((m - j) as u64)).collect()
    }
}
