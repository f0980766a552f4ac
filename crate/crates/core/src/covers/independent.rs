//! Covers from independent shifted intervals of bi-infinite sequences.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{check_measure_at_most, check_r_below_s, Budgets, Construction, CoverCertificate, Mode, Params};
use crate::cantor::rational::{ceil_to_int, Rational};
use crate::cantor::{ClopenSet, MeasureSpec};
use crate::error::{Error, Result};
use crate::transforms::{embed_bidirectional, shift_assignment, span, BiAssignment, BiIndexMap, BidirectionalShift, ExactMap};

/// `(d + ε)r + d(1 − d)/(kε²) <= sd`.
pub fn lemma1_holds(d: &Rational, r: &Rational, s: &Rational, epsilon: &Rational, k: u64) -> bool {
    if k == 0 {
        return false;
    }
    let one = Rational::one();
    let k = Rational::from_integer(BigInt::from(k));
    (d + epsilon) * r + d * (&one - d) / (k * epsilon * epsilon) <= s * d
}

/// Least `k` for which [`lemma1_holds`].
pub fn lemma1_k(d: &Rational, r: &Rational, s: &Rational, epsilon: &Rational) -> Result<u64> {
    let zero = Rational::zero();
    let one = Rational::one();
    if *d <= zero || *d >= one {
        return Err(Error::precondition(format!("d = {d} must lie in (0, 1)")));
    }
    check_r_below_s(r, s)?;
    if *epsilon <= zero {
        return Err(Error::precondition(format!("epsilon = {epsilon} must be positive")));
    }
    let slack = s * d - (d + epsilon) * r;
    if slack <= zero {
        return Err(Error::precondition(format!(
            "(d + epsilon)·r >= s·d for epsilon = {epsilon}; choose a smaller epsilon"
        )));
    }
    let k = ceil_to_int(&(d * (&one - d) / (epsilon * epsilon * slack)));
    let k = k
        .to_u64()
        .ok_or_else(|| Error::precondition(format!("k = {k} does not fit in 64 bits")))?;
    Ok(k.max(1))
}

fn admissible(n: i64, kept: &[i64], span: i64) -> bool {
    n.abs() > span && kept.iter().all(|&m| (n - m).abs() > span)
}

/// Keeps a shift when it differs from 0 and from every kept shift by more
/// than `span`, until `limit` shifts are kept. Returns the kept shifts and
/// the number pulled.
pub fn select_shifts(shifts: impl IntoIterator<Item = i64>, span: i64, limit: usize) -> (Vec<i64>, usize) {
    let mut kept: Vec<i64> = Vec::new();
    let mut pulled = 0;
    for n in shifts {
        if kept.len() >= limit {
            break;
        }
        pulled += 1;
        if admissible(n, &kept, span) {
            kept.push(n);
        }
    }
    (kept, pulled)
}

/// Position bound of `T^-n(a)`: constraints on bi-indices `[lo, hi]` move to `[lo + n, hi + n]`.
fn shifted_depth(a: &ClopenSet, n: i64) -> usize {
    let depth = a.depth();
    if depth == 0 {
        return 0;
    }
    let (lo, hi) = (0..depth).map(BiIndexMap::to_index).fold((0, 0), |(lo, hi), i| (lo.min(i), hi.max(i)));
    BiIndexMap::to_position(lo + n).max(BiIndexMap::to_position(hi + n)) + 1
}

struct ShiftedMeet {
    set: ClopenSet,
    used: Vec<i64>,
}

/// Intersects `I_x` with `T^-n(a)` for successive `n`, stopping once the
/// measure reaches `target`. Each step checks
/// `μ(I_x ∩ T^-n(a)) = μ(a ∩ T^n(I_x))`.
fn shifted_meet(
    a: &ClopenSet,
    x: &BiAssignment,
    shifts: impl Iterator<Item = i64>,
    target: &Rational,
    budgets: &Budgets,
) -> Result<ShiftedMeet> {
    let i_x = embed_bidirectional(x);
    let mut set = i_x;
    let mut used = Vec::new();
    for n in shifts {
        let depth = shifted_depth(a, n);
        if depth > budgets.depth {
            return Err(Error::DepthBudget {
                depth,
                budget: budgets.depth,
            });
        }
        let pre = BidirectionalShift { n }.preimage_set(a);
        let lhs = i_x.intersect(&pre).uniform_measure();
        let rhs = a.intersect(&embed_bidirectional(&shift_assignment(x, n))).uniform_measure();
        if lhs != rhs {
            return Err(Error::precondition(format!(
                "measure identity fails at n = {n}: {lhs} != {rhs}"
            )));
        }
        set = set.intersect(&pre);
        used.push(n);
        if set.uniform_measure() <= *target {
            break;
        }
    }
    Ok(ShiftedMeet { set, used })
}

struct Setup {
    params: Params,
    d: Rational,
    k: u64,
}

fn setup(a: &ClopenSet, r: &Rational, s: &Rational, x: &BiAssignment) -> Result<Setup> {
    check_r_below_s(r, s)?;
    check_measure_at_most(a, r, &MeasureSpec::Uniform)?;
    let mut params = Params::new(r.clone());
    params.s = Some(s.clone());
    params.x_bi = Some(x.clone());
    if a.is_empty() {
        return Ok(Setup {
            params,
            d: Rational::zero(),
            k: 0,
        });
    }
    if x.is_empty() {
        return Err(Error::precondition("x must fix at least one index"));
    }
    let d = embed_bidirectional(x).uniform_measure();
    let epsilon = if r.is_zero() {
        d.clone()
    } else {
        &d * (s - r) / (Rational::from_integer(2.into()) * r)
    };
    let k = lemma1_k(&d, r, s, &epsilon)?;
    params.k = Some(k);
    Ok(Setup { params, d, k })
}

fn empty_stage(construction: Construction, params: Params) -> CoverCertificate {
    CoverCertificate::build(
        construction,
        params,
        MeasureSpec::Uniform,
        Mode::Exact,
        vec![(ClopenSet::empty(), Rational::zero())],
    )
}

/// `I_x ∩ ⋂_{i<=k} T^-iN(a)` with `N = span(x) + 1`, stopping early once the
/// exact measure is at most `s·μ(I_x)`. `a` is given in zig-zag coordinates.
pub fn bidirectional_cover(
    a: &ClopenSet,
    r: &Rational,
    s: &Rational,
    x: &BiAssignment,
    budgets: &Budgets,
) -> Result<CoverCertificate> {
    let Setup { mut params, d, k } = setup(a, r, s, x)?;
    if a.is_empty() {
        return Ok(empty_stage(Construction::Bidirectional, params));
    }
    let big_n = span(x) + 1;
    let target = s * &d;
    let meet = shifted_meet(a, x, (1..=k as i64).map(|i| i * big_n), &target, budgets)?;
    params.big_n = Some(big_n as u64);
    params.n = Some(meet.used.len() as u64);
    params.shifts = Some(meet.used);
    Ok(CoverCertificate::build(
        Construction::Bidirectional,
        params,
        MeasureSpec::Uniform,
        Mode::Exact,
        vec![(meet.set, target)],
    ))
}

/// As [`bidirectional_cover`], with the shifts pulled from `shifts` and kept
/// by the rule of [`select_shifts`].
pub fn enumerable_shift_cover(
    a: &ClopenSet,
    r: &Rational,
    s: &Rational,
    shifts: impl IntoIterator<Item = i64>,
    x: &BiAssignment,
    budgets: &Budgets,
) -> Result<CoverCertificate> {
    let Setup { mut params, d, k } = setup(a, r, s, x)?;
    if a.is_empty() {
        return Ok(empty_stage(Construction::EnumerableShift, params));
    }
    let target = s * &d;
    let width = span(x);
    let mut set = embed_bidirectional(x);
    let mut kept: Vec<i64> = Vec::new();
    let mut pulled = 0;
    for n in shifts.into_iter().take(budgets.pulls) {
        if kept.len() as u64 >= k || set.uniform_measure() <= target {
            break;
        }
        pulled += 1;
        if !admissible(n, &kept, width) {
            continue;
        }
        let step = shifted_meet(a, x, std::iter::once(n), &target, budgets)?;
        set = set.intersect(&step.set);
        kept.push(n);
    }
    if (kept.len() as u64) < k && set.uniform_measure() > target {
        return Err(Error::ShiftsExhausted {
            pulled,
            kept: kept.len(),
            needed: k,
        });
    }
    params.n = Some(kept.len() as u64);
    params.shifts = Some(kept);
    Ok(CoverCertificate::build(
        Construction::EnumerableShift,
        params,
        MeasureSpec::Uniform,
        Mode::Exact,
        vec![(set, target)],
    ))
}
