//! Covers for ergodic transforms through averages of preimages.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{check_unit, Budgets, Construction, CoverCertificate, Mode, Params, StoppingRule, SQRT_BITS};
use crate::cantor::rational::{sqrt_upper, Rational};
use crate::cantor::{ClopenSet, MeasureSpec, Word};
use crate::error::{Error, Result};
use crate::transforms::{check_measure_preserving, ExactMap, TransformSpec};

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn depth_checked(s: ClopenSet, budgets: &Budgets) -> Result<ClopenSet> {
    let depth = s.depth();
    if depth > budgets.depth {
        return Err(Error::DepthBudget {
            depth,
            budget: budgets.depth,
        });
    }
    Ok(s)
}

/// `T^-i(s)` for `i = 0..=n`.
fn preimages(map: &dyn ExactMap, s: &ClopenSet, n: u64, budgets: &Budgets) -> Result<Vec<ClopenSet>> {
    let mut out = vec![*s];
    for _ in 0..n {
        let next = depth_checked(map.preimage_set(out.last().expect("non-empty")), budgets)?;
        out.push(next);
    }
    Ok(out)
}

/// `‖a_n − μ(I)‖²` where `a_n` averages the indicators of `T^-i(xΩ)`, `i <= n`.
pub fn l2_average_distance(
    t: &TransformSpec,
    x: &Word,
    n: u64,
    m: &MeasureSpec,
    budgets: &Budgets,
) -> Result<Rational> {
    let map = t.exact_map()?;
    let i = ClopenSet::cylinder(x);
    let sets = preimages(map, &i, n, budgets)?;
    Ok(l2_from_sets(&sets, &i.measure(m), m))
}

fn l2_from_sets(sets: &[ClopenSet], mu_i: &Rational, m: &MeasureSpec) -> Rational {
    // Equal preimages are common (periodic or identity-like maps), so group them.
    let mut counts: HashMap<ClopenSet, u64> = HashMap::new();
    let mut order = Vec::new();
    for s in sets {
        let c = counts.entry(*s).or_insert(0);
        if *c == 0 {
            order.push(*s);
        }
        *c += 1;
    }
    let total = int(sets.len() as u64);
    let mut pairs = Rational::zero();
    let mut single = Rational::zero();
    for (a_idx, a) in order.iter().enumerate() {
        let ca = int(counts[a]);
        single += &ca * a.measure(m);
        pairs += &ca * &ca * a.measure(m);
        for b in &order[a_idx + 1..] {
            let cb = int(counts[b]);
            pairs += int(2) * &ca * cb * a.intersect(b).measure(m);
        }
    }
    let second = pairs / (&total * &total);
    let mean = single / &total;
    second - int(2) * mu_i * mean + mu_i * mu_i
}

/// `(1/(n+1)) Σ_{i<=n} μ(I ∩ T^-i(a))`.
pub fn average_star_direct(
    t: &TransformSpec,
    a: &ClopenSet,
    x: &Word,
    n: u64,
    m: &MeasureSpec,
    budgets: &Budgets,
) -> Result<Rational> {
    let map = t.exact_map()?;
    let i = ClopenSet::cylinder(x);
    let sum = preimages(map, a, n, budgets)?
        .iter()
        .fold(Rational::zero(), |acc, p| acc + i.intersect(p).measure(m));
    Ok(sum / int(n + 1))
}

/// `(1/(n+1)) Σ_{j<=n} μ(T^-j(I) ∩ T^-n(a))`, the inner product of the
/// indicator of `T^-n(a)` with the average of the indicators of `T^-j(I)`.
pub fn average_star_shifted(
    t: &TransformSpec,
    a: &ClopenSet,
    x: &Word,
    n: u64,
    m: &MeasureSpec,
    budgets: &Budgets,
) -> Result<Rational> {
    let map = t.exact_map()?;
    let i = ClopenSet::cylinder(x);
    let b = *preimages(map, a, n, budgets)?.last().expect("non-empty");
    let sum = preimages(map, &i, n, budgets)?
        .iter()
        .fold(Rational::zero(), |acc, p| acc + p.intersect(&b).measure(m));
    Ok(sum / int(n + 1))
}

struct Found {
    set: ClopenSet,
    n: u64,
    rule: StoppingRule,
}

/// Depth at which measure preservation is checked before a search.
fn check_depth(a: &ClopenSet) -> usize {
    a.depth().clamp(1, 8)
}

fn preflight(t: &TransformSpec, a: &ClopenSet, r: &Rational, m: &MeasureSpec) -> Result<Rational> {
    check_unit(r, "r")?;
    m.validate()?;
    let ma = a.measure(m);
    if ma >= *r {
        return Err(Error::precondition(format!("measure(a) = {ma} must be below r = {r}")));
    }
    let report = check_measure_preserving(t, check_depth(a), m)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::precondition(format!(
            "{} is not measure preserving: preimage of {} has measure {} instead of {}",
            t.name(),
            v.word,
            v.preimage_measure,
            v.expected
        )));
    }
    Ok(ma)
}

/// Doubles `n` until the average of `μ(I ∩ T^-i(a))` is small enough.
///
/// For `n` up to `budgets.l2_n` the stop requires the L2 bound
/// `μ(a)μ(I) + sqrt_upper(‖a_n − μ(I)‖²) < rμ(I)`; beyond it the exact
/// average `<= rμ(I)` is accepted.
fn search(
    map: &dyn ExactMap,
    a: &ClopenSet,
    ma: &Rational,
    r: &Rational,
    x: &Word,
    m: &MeasureSpec,
    budgets: &Budgets,
) -> Result<Found> {
    let i = ClopenSet::cylinder(x);
    let mu_i = i.measure(m);
    let target = r * &mu_i;
    if mu_i.is_zero() {
        return Ok(Found {
            set: ClopenSet::empty(),
            n: 0,
            rule: StoppingRule::ExactAverage,
        });
    }
    let mut pre = *a;
    let mut meet = i.intersect(a);
    let mut sum = meet.measure(m);
    let mut i_pre = vec![i];
    let mut done: u64 = 0;
    let mut best: Option<Rational> = None;
    let mut n: u64 = 1;
    while n <= budgets.n {
        while done < n {
            pre = depth_checked(map.preimage_set(&pre), budgets)?;
            sum += i.intersect(&pre).measure(m);
            meet = meet.intersect(&pre);
            done += 1;
        }
        let average = &sum / int(n + 1);
        if best.as_ref().is_none_or(|b| average < *b) {
            best = Some(average.clone());
        }
        // The L2 bound dominates the average, so it can only fire when the average does.
        if average <= target {
            if n <= budgets.l2_n {
                while (i_pre.len() as u64) <= n {
                    let next = depth_checked(map.preimage_set(i_pre.last().expect("non-empty")), budgets)?;
                    i_pre.push(next);
                }
                let l2 = l2_from_sets(&i_pre[..=n as usize], &mu_i, m);
                if ma * &mu_i + sqrt_upper(&l2, SQRT_BITS) < target {
                    return Ok(Found {
                        set: meet,
                        n,
                        rule: StoppingRule::CauchySchwarz,
                    });
                }
            } else {
                return Ok(Found {
                    set: meet,
                    n,
                    rule: StoppingRule::ExactAverage,
                });
            }
        }
        n *= 2;
    }
    Err(Error::SearchBudget {
        budget: budgets.n,
        best_average: Box::new(best.unwrap_or_else(Rational::one)),
        target: Box::new(target),
    })
}

/// `I ∩ ⋂_{i<=n} T^-i(a)` for `I = xΩ`, certified `<= rμ(I)`.
///
/// `t` must be exact and measure preserving (checked on cylinders up to the
/// depth of `a`); ergodicity is the caller's assertion, and a failed search
/// ends in [`Error::SearchBudget`].
pub fn ergodic_cover(
    t: &TransformSpec,
    a: &ClopenSet,
    r: &Rational,
    x: &Word,
    m: &MeasureSpec,
    budgets: &Budgets,
) -> Result<CoverCertificate> {
    let map = t.exact_map()?;
    let ma = preflight(t, a, r, m)?;
    let found = search(map, a, &ma, r, x, m, budgets)?;
    let mut params = Params::new(r.clone());
    params.n = Some(found.n);
    params.x = Some(x.clone());
    params.transform = Some(t.name().to_string());
    params.stopping_rule = Some(found.rule);
    let bound = r * ClopenSet::cylinder(x).measure(m);
    Ok(CoverCertificate::build(
        Construction::Ergodic,
        params,
        m.clone(),
        Mode::Exact,
        vec![(found.set, bound)],
    ))
}

/// Stage 0 is `a` with bound `r`; stage `j + 1` replaces every interval of
/// stage `j` by its ergodic cover, with bound `r^(j+2)`.
pub fn ergodic_cover_iterate(
    t: &TransformSpec,
    a: &ClopenSet,
    r: &Rational,
    k: usize,
    m: &MeasureSpec,
    budgets: &Budgets,
) -> Result<CoverCertificate> {
    let map = t.exact_map()?;
    let ma = preflight(t, a, r, m)?;
    let mut stages = vec![(*a, r.clone())];
    let mut max_n = 0;
    let mut rule = StoppingRule::CauchySchwarz;
    for _ in 0..k {
        let (prev, bound) = stages.last().expect("non-empty").clone();
        let mut next = ClopenSet::empty();
        for x in prev.words() {
            let found = search(map, a, &ma, r, &x, m, budgets)?;
            max_n = max_n.max(found.n);
            if found.rule == StoppingRule::ExactAverage {
                rule = StoppingRule::ExactAverage;
            }
            next = next.union(&found.set);
        }
        stages.push((next, bound * r));
    }
    let mut params = Params::new(r.clone());
    params.k = Some(k as u64);
    params.transform = Some(t.name().to_string());
    if k > 0 {
        params.n = Some(max_n);
        params.stopping_rule = Some(rule);
    }
    Ok(CoverCertificate::build(
        Construction::Ergodic,
        params,
        m.clone(),
        Mode::Exact,
        stages,
    ))
}
