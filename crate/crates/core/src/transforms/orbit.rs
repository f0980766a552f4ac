use super::TransformSpec;
use crate::cantor::{Point, Word};
use crate::error::{Error, Result};

/// Default cap on the input prefix length used to evaluate an orbit.
pub const ORBIT_INPUT_BUDGET: usize = 1 << 22;

/// Walks `p, T(p), T²(p), …`, yielding `out_len`-bit prefixes.
///
/// The orbit keeps `T^k` applied to a finite prefix of `p`. When the
/// remaining output gets shorter than `out_len` it restarts from a longer
/// input prefix, doubling until the input budget is reached.
pub struct Orbit<'a> {
    t: &'a TransformSpec,
    point: Point,
    out_len: usize,
    input_len: usize,
    budget: usize,
    k: u64,
    current: Vec<bool>,
}

impl<'a> Orbit<'a> {
    pub fn new(t: &'a TransformSpec, point: Point, out_len: usize) -> Self {
        Self::with_budget(t, point, out_len, ORBIT_INPUT_BUDGET)
    }

    pub fn with_budget(t: &'a TransformSpec, point: Point, out_len: usize, budget: usize) -> Self {
        let input_len = (out_len + 64).min(budget.max(out_len));
        let current = point.prefix_of(input_len).into_bits();
        Orbit {
            t,
            point,
            out_len,
            input_len,
            budget,
            k: 0,
            current,
        }
    }

    /// Number of steps taken so far.
    pub fn steps(&self) -> u64 {
        self.k
    }

    /// The first `out_len` bits of `T^k(p)` for the current `k`.
    pub fn current(&mut self) -> Result<Word> {
        while self.current.len() < self.out_len {
            if self.input_len >= self.budget {
                return Err(Error::InsufficientOutput {
                    wanted: self.out_len,
                    budget: self.budget,
                });
            }
            self.input_len = (self.input_len * 2).min(self.budget);
            let mut bits = self.point.prefix_of(self.input_len).into_bits();
            for _ in 0..self.k {
                bits = self.t.forward(&bits);
            }
            self.current = bits;
        }
        Ok(Word::from_bits(self.current[..self.out_len].to_vec()))
    }

    pub fn advance(&mut self) {
        self.current = self.t.forward(&self.current);
        self.k += 1;
    }

    /// Current prefix, then step.
    pub fn next_prefix(&mut self) -> Result<Word> {
        let w = self.current()?;
        self.advance();
        Ok(w)
    }
}

/// First `out_len` bits of `T^k(p)`.
pub fn apply_point(t: &TransformSpec, p: &Point, k: u64, out_len: usize) -> Result<Word> {
    apply_point_with_budget(t, p, k, out_len, ORBIT_INPUT_BUDGET)
}

pub fn apply_point_with_budget(
    t: &TransformSpec,
    p: &Point,
    k: u64,
    out_len: usize,
    budget: usize,
) -> Result<Word> {
    let mut orbit = Orbit::with_budget(t, p.clone(), out_len, budget);
    for _ in 0..k {
        orbit.advance();
    }
    orbit.current()
}
