//! Covers built from disjoint intervals: shift iteration, finite changes,
//! prefix additions, and block factorizations.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{check_measure_at_most, check_r_below_s, check_unit, Budgets, Construction, CoverCertificate, Mode, Params};
use crate::cantor::rational::{dyadic, Rational};
use crate::cantor::{ClopenSet, EffOpen, MeasureSpec, Point, Word};
use crate::error::{Error, Result};

/// `xA`: the part of the cover of `A*` inside `xΩ` under the shift.
pub fn kucera_step(a: &ClopenSet, r: &Rational, x: &Word) -> Result<ClopenSet> {
    check_unit(r, "r")?;
    check_measure_at_most(a, r, &MeasureSpec::Uniform)?;
    Ok(a.concat_prefix(x))
}

/// Stages `A_0 = a` and `A_{j+1} = ⋃ {xa : x a word of A_j}`, with bounds `r^(j+1)`.
pub fn kucera_iterate(a: &ClopenSet, r: &Rational, k: usize) -> Result<CoverCertificate> {
    kucera_step(a, r, &Word::empty())?;
    let mut params = Params::new(r.clone());
    params.k = Some(k as u64);
    Ok(CoverCertificate::build(
        Construction::Kucera,
        params,
        MeasureSpec::Uniform,
        Mode::Exact,
        kucera_stages(a, r, k),
    ))
}

fn kucera_stages(a: &ClopenSet, r: &Rational, k: usize) -> Vec<(ClopenSet, Rational)> {
    let mut stages = vec![(*a, r.clone())];
    for _ in 0..k {
        let (prev, bound) = stages.last().expect("non-empty");
        stages.push((prev.graft(a), bound * r));
    }
    stages
}

/// The iteration for an enumerated set with a caller-asserted bound `r`.
///
/// Only the first `fuel` cylinders are used. The certificate is labelled
/// `assumed` and never verified.
pub fn kucera_iterate_assumed(a: &mut EffOpen, r: &Rational, k: usize, fuel: usize) -> Result<CoverCertificate> {
    check_unit(r, "r")?;
    let snapshot = a.prefix(fuel);
    // The asserted bound is refuted if a finite prefix already exceeds it.
    check_measure_at_most(&snapshot, r, &MeasureSpec::Uniform)?;
    let mut params = Params::new(r.clone());
    params.k = Some(k as u64);
    params.fuel = Some(fuel);
    Ok(CoverCertificate::build(
        Construction::Kucera,
        params,
        MeasureSpec::Uniform,
        Mode::Assumed,
        kucera_stages(&snapshot, r, k),
    ))
}

/// `xB` with `B = ⋂ {A_y : |y| = |x|}`, where `A_y = {ω : yω ∈ a}`.
pub fn finite_change_cover(a: &ClopenSet, x: &Word) -> Result<ClopenSet> {
    if a.is_full() {
        return Err(Error::precondition("measure(a) must be below 1"));
    }
    Ok(a.section_meet(x.len()).concat_prefix(x))
}

/// [`finite_change_cover`] as a one-stage certificate with bound `μ(a)·2^-|x|`.
pub fn finite_change_certificate(a: &ClopenSet, x: &Word) -> Result<CoverCertificate> {
    let set = finite_change_cover(a, x)?;
    let ma = a.uniform_measure();
    let mut params = Params::new(ma.clone());
    params.x = Some(x.clone());
    Ok(CoverCertificate::build(
        Construction::FiniteChange,
        params,
        MeasureSpec::Uniform,
        Mode::Exact,
        vec![(set, ma * dyadic(x.len()))],
    ))
}

/// Words `z_1, …, z_m` with the intervals `z_i x Ω` pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixFamily {
    pub words: Vec<Word>,
    pub rounds: usize,
    /// Sequences not in any `z_i x Ω`.
    pub remainder: ClopenSet,
}

impl PrefixFamily {
    fn start() -> Self {
        PrefixFamily {
            words: Vec::new(),
            rounds: 0,
            remainder: ClopenSet::full(),
        }
    }

    /// Every uncovered interval `z` joins the family and gives up `zxΩ`.
    fn round(&mut self, x: &Word, budget: usize) -> Result<()> {
        let count = self.remainder.cylinder_count() as usize;
        if self.words.len() + count > budget {
            return Err(Error::InsufficientOutput {
                wanted: self.words.len() + count,
                budget,
            });
        }
        self.words.extend(self.remainder.words());
        self.remainder = self.remainder.graft(&ClopenSet::cylinder(x).complement());
        self.rounds += 1;
        Ok(())
    }
}

/// The family after exactly `rounds` rounds; the remainder has measure
/// `(1 − 2^-|x|)^rounds`.
pub fn prefix_family_rounds(x: &Word, rounds: usize, budgets: &Budgets) -> Result<PrefixFamily> {
    if x.is_empty() {
        return Err(Error::precondition("x must be non-empty"));
    }
    let mut fam = PrefixFamily::start();
    for _ in 0..rounds {
        fam.round(x, budgets.family)?;
    }
    Ok(fam)
}

/// Runs rounds until the uncovered remainder has measure at most `delta`.
pub fn prefix_family(x: &Word, delta: &Rational, budgets: &Budgets) -> Result<PrefixFamily> {
    if x.is_empty() {
        return Err(Error::precondition("x must be non-empty"));
    }
    if *delta <= Rational::zero() || *delta >= Rational::one() {
        return Err(Error::precondition(format!("delta = {delta} must lie in (0, 1)")));
    }
    let mut fam = PrefixFamily::start();
    while fam.remainder.uniform_measure() > *delta {
        fam.round(x, budgets.family)?;
    }
    Ok(fam)
}

/// `xΩ ∩ ⋂ A_{z_i}` over a prefix family leaving at most
/// `delta = (s − r) / (2(1 + r))` uncovered, with bound `s·2^-|x|`.
pub fn prefix_addition_cover(
    a: &ClopenSet,
    r: &Rational,
    s: &Rational,
    x: &Word,
    budgets: &Budgets,
) -> Result<CoverCertificate> {
    check_r_below_s(r, s)?;
    check_measure_at_most(a, r, &MeasureSpec::Uniform)?;
    let mut params = Params::new(r.clone());
    params.s = Some(s.clone());
    params.x = Some(x.clone());
    if a.is_empty() {
        return Ok(CoverCertificate::build(
            Construction::PrefixAddition,
            params,
            MeasureSpec::Uniform,
            Mode::Exact,
            vec![(ClopenSet::empty(), Rational::zero())],
        ));
    }
    let delta = (s - r) / (Rational::from_integer(2.into()) * (Rational::one() + r));
    let fam = prefix_family(x, &delta, budgets)?;
    let set = fam
        .words
        .iter()
        .fold(ClopenSet::cylinder(x), |acc, z| acc.intersect(&a.shift_section(z)));
    params.k = Some(fam.words.len() as u64);
    Ok(CoverCertificate::build(
        Construction::PrefixAddition,
        params,
        MeasureSpec::Uniform,
        Mode::Exact,
        vec![(set, s * dyadic(x.len()))],
    ))
}

/// Greedy block decomposition of a point prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Factorization {
    /// The prefix splits into `blocks` followed by `tail`, which is a proper
    /// prefix of some block.
    Factored { blocks: Vec<Word>, tail: Word },
    /// No block starts at `position`.
    FailsAt { position: usize, blocks: Vec<Word> },
}

/// Factors the first `max_len` bits of `p` into blocks from the
/// prefix-free set `s`.
pub fn block_factorization_witness(s: &[Word], p: &Point, max_len: usize) -> Result<Factorization> {
    for (i, u) in s.iter().enumerate() {
        if u.is_empty() {
            return Err(Error::precondition("blocks must be non-empty words"));
        }
        if let Some(v) = s[i + 1..].iter().find(|v| u.comparable(v)) {
            return Err(Error::precondition(format!("`{u}` and `{v}` are not prefix-free")));
        }
    }
    let bits = p.prefix_of(max_len).into_bits();
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < bits.len() {
        let rest = &bits[pos..];
        match s.iter().find(|u| u.is_prefix_of_bits(rest)) {
            Some(u) => {
                blocks.push(u.clone());
                pos += u.len();
            }
            None => {
                let tail = Word::from_bits(rest.to_vec());
                if s.iter().any(|u| tail.is_prefix_of(u)) {
                    return Ok(Factorization::Factored { blocks, tail });
                }
                return Ok(Factorization::FailsAt { position: pos, blocks });
            }
        }
    }
    Ok(Factorization::Factored {
        blocks,
        tail: Word::empty(),
    })
}
