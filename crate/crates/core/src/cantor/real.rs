use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{dyadic, format_rational, parse_rational, Rational};
use crate::error::Error;

/// A real number given by nested rational enclosures.
///
/// Wire format: `"sqrt2m1"` (√2 − 1), `"fracsqrtK"` (the fractional part of
/// √K for a non-square K), or an exact rational `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComputableReal {
    Exact(Rational),
    /// Fractional part of `sqrt(k)`; `k` is not a perfect square.
    FracSqrt(u64),
}

impl ComputableReal {
    pub fn sqrt2_minus_1() -> Self {
        ComputableReal::FracSqrt(2)
    }

    pub fn frac_sqrt(k: u64) -> Result<Self, Error> {
        let r = (k as f64).sqrt() as u64;
        if (r.saturating_sub(1)..=r + 1).any(|s| s * s == k) {
            return Err(Error::Malformed(format!("{k} is a perfect square")));
        }
        Ok(ComputableReal::FracSqrt(k))
    }

    /// `(lo, hi)` with `lo <= x <= hi` and `hi - lo <= 2^-precision`.
    ///
    /// Enclosures are nested: raising `precision` never widens them.
    pub fn enclose(&self, precision: usize) -> (Rational, Rational) {
        match self {
            ComputableReal::Exact(r) => (r.clone(), r.clone()),
            ComputableReal::FracSqrt(k) => {
                let whole = BigUint::from(*k).sqrt();
                let scaled = (BigUint::from(*k) << (2 * precision)).sqrt();
                let lo_num = BigInt::from(scaled) - (BigInt::from(whole) << precision);
                let lo = Rational::new(lo_num, BigInt::one() << precision);
                let hi = &lo + dyadic(precision);
                (lo, hi)
            }
        }
    }

    pub fn approx_f64(&self) -> f64 {
        let (lo, _) = self.enclose(60);
        lo.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ComputableReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComputableReal::Exact(r) => f.write_str(&format_rational(r)),
            ComputableReal::FracSqrt(2) => f.write_str("sqrt2m1"),
            ComputableReal::FracSqrt(k) => write!(f, "fracsqrt{k}"),
        }
    }
}

impl FromStr for ComputableReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "sqrt2m1" {
            return Ok(ComputableReal::sqrt2_minus_1());
        }
        if let Some(k) = s.strip_prefix("fracsqrt") {
            let k: u64 = k
                .parse()
                .map_err(|_| Error::Malformed(format!("bad radicand in `{s}`")))?;
            return ComputableReal::frac_sqrt(k);
        }
        parse_rational(s).map(ComputableReal::Exact)
    }
}

impl Serialize for ComputableReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ComputableReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
