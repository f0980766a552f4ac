//! Birkhoff averages along orbits: frequency traces, the exceedance sets
//! `G_N`, orbit experiments, lower semicomputable integrands and sandwiched
//! sets.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cantor::rational::{ceil_to_int, floor_to_int, serde_rational, to_f64, Rational};
use crate::cantor::{ClopenSet, ComputableReal, MeasureSpec, Point, Word};
use crate::covers::Budgets;
use crate::error::{Error, Result};
use crate::transforms::{Orbit, TransformSpec};

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `coef · 1_{wordΩ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "serde_rational")]
    pub coef: Rational,
    pub word: Word,
}

/// A non-negative rational combination of cylinder indicators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasicFunction {
    pub terms: Vec<Term>,
}

impl BasicFunction {
    pub fn new(terms: impl IntoIterator<Item = (Rational, Word)>) -> Result<Self> {
        let terms: Vec<Term> = terms.into_iter().map(|(coef, word)| Term { coef, word }).collect();
        if let Some(t) = terms.iter().find(|t| t.coef < Rational::zero()) {
            return Err(Error::Malformed(format!("coefficient {} on `{}` is negative", t.coef, t.word)));
        }
        Ok(BasicFunction { terms })
    }

    pub fn indicator(w: &Word) -> Self {
        BasicFunction {
            terms: vec![Term {
                coef: Rational::one(),
                word: w.clone(),
            }],
        }
    }

    /// Bits needed to evaluate the function.
    pub fn depth(&self) -> usize {
        self.terms.iter().map(|t| t.word.len()).max().unwrap_or(0)
    }

    /// Value at any sequence starting with `bits` (at least `depth()` of them).
    pub fn eval(&self, bits: &[bool]) -> Rational {
        self.terms
            .iter()
            .filter(|t| t.word.is_prefix_of_bits(bits))
            .fold(Rational::zero(), |acc, t| acc + &t.coef)
    }
}

/// `Σ c_j μ(w_jΩ)`.
pub fn integral(f: &BasicFunction, m: &MeasureSpec) -> Rational {
    f.terms
        .iter()
        .fold(Rational::zero(), |acc, t| acc + &t.coef * m.cylinder(&t.word))
}

/// A pointwise nondecreasing sequence of basic functions.
#[derive(Clone)]
pub struct LscFunction {
    stage: Arc<dyn Fn(usize) -> BasicFunction + Send + Sync>,
}

impl fmt::Debug for LscFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LscFunction")
    }
}

impl LscFunction {
    /// Stages from a generator; monotonicity is the caller's contract, see
    /// [`LscFunction::check_monotone`].
    pub fn from_fn(stage: impl Fn(usize) -> BasicFunction + Send + Sync + 'static) -> Self {
        LscFunction { stage: Arc::new(stage) }
    }

    /// Finitely many stages; later indices repeat the last one.
    pub fn from_stages(stages: Vec<BasicFunction>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::Malformed("an lsc function needs at least one stage".into()));
        }
        Ok(LscFunction::from_fn(move |i| stages[i.min(stages.len() - 1)].clone()))
    }

    pub fn stage(&self, i: usize) -> BasicFunction {
        (self.stage)(i)
    }

    /// Checks `stage(i+1) >= stage(i)` on every cylinder of the common
    /// refinement, for `i < stages`. Refinements deeper than `max_depth` are
    /// rejected.
    pub fn check_monotone(&self, stages: usize, max_depth: usize) -> Result<()> {
        for i in 0..stages {
            let (f, g) = (self.stage(i), self.stage(i + 1));
            let depth = f.depth().max(g.depth());
            if depth > max_depth {
                return Err(Error::DepthBudget {
                    depth,
                    budget: max_depth,
                });
            }
            if let Some(w) = Word::all_of_length(depth).find(|w| g.eval(w.bits()) < f.eval(w.bits())) {
                return Err(Error::precondition(format!("stage {} drops below stage {i} on `{w}`", i + 1)));
            }
        }
        Ok(())
    }
}

/// `(1/n) Σ_{k<n} f_stage(T^k p)`.
pub fn lsc_average(f: &LscFunction, stage: usize, t: &TransformSpec, p: &Point, n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    let g = f.stage(stage);
    let mut orbit = Orbit::new(t, p.clone(), g.depth());
    let mut sum = Rational::zero();
    for _ in 0..n {
        sum += g.eval(orbit.next_prefix()?.bits());
    }
    Ok(sum / int(n))
}

/// Frequencies `g_m = #{k < m : T^k p ∈ u} / m` for `m = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTrace {
    pub transform: String,
    pub set: ClopenSet,
    pub point: Point,
    /// Orbit prefixes of length `depth(u)`, one per step.
    pub prefixes: Vec<Word>,
    pub hits: Vec<bool>,
}

impl FrequencyTrace {
    pub fn len(&self) -> usize {
        self.hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }

    /// Hit counts after `1..=n` steps.
    pub fn counts(&self) -> Vec<u64> {
        self.hits
            .iter()
            .scan(0u64, |c, &h| {
                *c += h as u64;
                Some(*c)
            })
            .collect()
    }

    /// `g_1, …, g_n`.
    pub fn values(&self) -> Vec<Rational> {
        self.counts()
            .into_iter()
            .enumerate()
            .map(|(i, c)| Rational::new(BigInt::from(c), BigInt::from(i + 1)))
            .collect()
    }

    /// `g_m` for `1 <= m <= len`.
    pub fn g(&self, m: usize) -> Rational {
        let c = self.hits[..m].iter().filter(|&&h| h).count();
        Rational::new(BigInt::from(c), BigInt::from(m))
    }

    /// CSV with columns `k,orbit_prefix,in_set,g_exact,g_decimal`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,orbit_prefix,in_set,g_exact,g_decimal\n");
        for (k, ((w, &h), g)) in self.prefixes.iter().zip(&self.hits).zip(self.values()).enumerate() {
            out.push_str(&format!(
                "{},{},{},{}/{},{:.6}\n",
                k + 1,
                w,
                h as u8,
                g.numer(),
                g.denom(),
                to_f64(&g)
            ));
        }
        out
    }
}

pub fn frequency_trace(t: &TransformSpec, u: &ClopenSet, p: &Point, n: usize) -> Result<FrequencyTrace> {
    p.validate()?;
    let mut orbit = Orbit::new(t, p.clone(), u.depth());
    let mut prefixes = Vec::with_capacity(n);
    let mut hits = Vec::with_capacity(n);
    for _ in 0..n {
        let w = orbit.next_prefix()?;
        hits.push(u.contains_prefix(w.bits()));
        prefixes.push(w);
    }
    Ok(FrequencyTrace {
        transform: t.name().to_string(),
        set: *u,
        point: p.clone(),
        prefixes,
        hits,
    })
}

/// `⋃_{N <= n <= n_max} {ω : g_n(ω) > r}` and its exact measure.
///
/// `g_n(ω) > r` means at least `floor(rn) + 1` of the sets `T^-k(u)`,
/// `k < n`, contain `ω`; those threshold sets are built by the usual
/// at-least-`j`-of-`i` recursion.
pub fn gn_exceed_set(
    t: &TransformSpec,
    u: &ClopenSet,
    r: &Rational,
    big_n: u64,
    n_max: u64,
    m: &MeasureSpec,
    budgets: &Budgets,
) -> Result<(ClopenSet, Rational)> {
    if big_n == 0 || big_n > n_max {
        return Err(Error::precondition(format!("need 1 <= N = {big_n} <= n_max = {n_max}")));
    }
    let map = t.exact_map()?;
    // at_least[j]: points in at least j of the preimages seen so far.
    let mut at_least = vec![ClopenSet::full()];
    let mut pre = *u;
    let mut out = ClopenSet::empty();
    for n in 1..=n_max {
        if n > 1 {
            pre = map.preimage_set(&pre);
            if pre.depth() > budgets.depth {
                return Err(Error::DepthBudget {
                    depth: pre.depth(),
                    budget: budgets.depth,
                });
            }
        }
        at_least.push(ClopenSet::empty());
        for j in (1..at_least.len()).rev() {
            at_least[j] = at_least[j].union(&at_least[j - 1].intersect(&pre));
        }
        if n >= big_n {
            let need: BigInt = floor_to_int(&(r * int(n))) + BigInt::one();
            let need = usize::try_from(need.max(BigInt::zero())).expect("bounded by n + 1");
            if let Some(s) = at_least.get(need) {
                out = out.union(s);
            }
        }
    }
    let measure = out.measure(m);
    Ok((out, measure))
}

/// A subset of Ω with inner and outer clopen approximations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ApproximableSet {
    Exact { set: ClopenSet },
    /// Sequences whose binary expansion lies in `[lo, hi)`.
    Interval { lo: ComputableReal, hi: ComputableReal },
}

impl ApproximableSet {
    pub fn interval(lo: ComputableReal, hi: ComputableReal) -> Result<Self> {
        let (_, lo_hi) = lo.enclose(64);
        let (hi_lo, _) = hi.enclose(64);
        if lo_hi > hi_lo && lo != hi || lo.enclose(64).0 < Rational::zero() || hi.enclose(64).1 > Rational::one() {
            return Err(Error::Malformed("interval endpoints must satisfy 0 <= lo <= hi <= 1".into()));
        }
        Ok(ApproximableSet::Interval { lo, hi })
    }

    fn grid(precision: usize) -> (usize, Rational) {
        let q = precision + 2;
        (q, Rational::from_integer(BigInt::one() << q))
    }

    fn cells(start: BigInt, end: BigInt, q: usize) -> ClopenSet {
        let top = BigInt::one() << q;
        let clamp = |v: BigInt| v.max(BigInt::zero()).min(top.clone());
        let (s, e) = (clamp(start), clamp(end));
        if s >= e {
            return ClopenSet::empty();
        }
        let to_u = |v: BigInt| -> BigUint { v.to_biguint().expect("clamped") };
        ClopenSet::dyadic_range(&to_u(s), &to_u(e), q)
    }

    /// Clopen subset of the set.
    pub fn inner(&self, precision: usize) -> ClopenSet {
        match self {
            ApproximableSet::Exact { set } => *set,
            ApproximableSet::Interval { lo, hi } => {
                let (q, scale) = Self::grid(precision);
                let (_, lo_hi) = lo.enclose(q);
                let (hi_lo, _) = hi.enclose(q);
                Self::cells(ceil_to_int(&(lo_hi * &scale)), floor_to_int(&(hi_lo * &scale)), q)
            }
        }
    }

    /// Clopen superset of the set, within `2^-precision` of `inner` in measure.
    pub fn outer(&self, precision: usize) -> ClopenSet {
        match self {
            ApproximableSet::Exact { set } => *set,
            ApproximableSet::Interval { lo, hi } => {
                let (q, scale) = Self::grid(precision);
                let (lo_lo, _) = lo.enclose(q);
                let (_, hi_hi) = hi.enclose(q);
                Self::cells(floor_to_int(&(lo_lo * &scale)), ceil_to_int(&(hi_hi * &scale)), q)
            }
        }
    }
}

/// Frequencies of the inner and outer approximations along one orbit.
pub fn approximable_frequency(
    x: &ApproximableSet,
    precision: usize,
    t: &TransformSpec,
    p: &Point,
    n: u64,
) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    let (inner, outer) = (x.inner(precision), x.outer(precision));
    let mut orbit = Orbit::new(t, p.clone(), inner.depth().max(outer.depth()));
    let (mut low, mut high) = (0u64, 0u64);
    for _ in 0..n {
        let w = orbit.next_prefix()?;
        low += inner.contains_prefix(w.bits()) as u64;
        high += outer.contains_prefix(w.bits()) as u64;
    }
    Ok((
        Rational::new(BigInt::from(low), BigInt::from(n)),
        Rational::new(BigInt::from(high), BigInt::from(n)),
    ))
}

/// One orbit of an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub point: Point,
    #[serde(with = "serde_rational")]
    pub g_n: Rational,
    /// `|g_n − μ(u)|`.
    pub deviation: f64,
    /// Largest `|g_m − μ(u)|` over the second half of the trace.
    pub tail_max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub transform: String,
    pub set: ClopenSet,
    #[serde(with = "serde_rational")]
    pub set_measure: Rational,
    pub n: u64,
    pub points: Vec<PointReport>,
    pub mean_deviation: f64,
    pub max_deviation: f64,
    /// `3·sqrt(μ(1−μ)/n)`, three binomial standard deviations.
    pub tolerance: f64,
    /// Mean deviation over seeded points within tolerance; absent when no
    /// point is seeded. Individual non-random points carry no verdict.
    pub seeded_within_tolerance: Option<bool>,
}

/// Runs one trace per point (in parallel) and summarizes `|g_n − μ(u)|`.
pub fn birkhoff_experiment(
    t: &TransformSpec,
    u: &ClopenSet,
    points: &[Point],
    n: u64,
    m: &MeasureSpec,
) -> Result<ExperimentReport> {
    if n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    let mu = u.measure(m);
    let mu_f = to_f64(&mu);
    let traces: Vec<Result<FrequencyTrace>> = std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .iter()
            .map(|p| scope.spawn(move || frequency_trace(t, u, p, n as usize)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("trace thread panicked")).collect()
    });
    let mut rows = Vec::with_capacity(points.len());
    for trace in traces {
        let trace = trace?;
        let counts = trace.counts();
        let dev_at = |m: usize| (counts[m - 1] as f64 / m as f64 - mu_f).abs();
        let g_n = trace.g(n as usize);
        let tail_start = (n as usize / 2).max(1);
        rows.push(PointReport {
            point: trace.point.clone(),
            deviation: (to_f64(&g_n) - mu_f).abs(),
            tail_max_deviation: (tail_start..=n as usize).map(dev_at).fold(0.0, f64::max),
            g_n,
        });
    }
    let tolerance = 3.0 * (mu_f * (1.0 - mu_f) / n as f64).sqrt();
    let seeded: Vec<f64> = rows
        .iter()
        .filter(|r| matches!(r.point, Point::Seeded { .. }))
        .map(|r| r.deviation)
        .collect();
    let mean = |v: &[f64]| if v.is_empty() { 0.0 } else { v.iter().sum::<f64>() / v.len() as f64 };
    let all: Vec<f64> = rows.iter().map(|r| r.deviation).collect();
    Ok(ExperimentReport {
        transform: t.name().to_string(),
        set: *u,
        set_measure: mu,
        n,
        mean_deviation: mean(&all),
        max_deviation: all.iter().copied().fold(0.0, f64::max),
        tolerance,
        seeded_within_tolerance: (!seeded.is_empty()).then(|| mean(&seeded) <= tolerance),
        points: rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::rational::{dyadic, rat};
    use crate::transforms::iterate_preimage;

    #[test]
    fn frequency_examples() {
        let tr = frequency_trace(&TransformSpec::odometer(), &ClopenSet::of(&["1"]), &Point::zeros(), 8).unwrap();
        assert_eq!(tr.g(8), rat(1, 2));
        let tr = frequency_trace(&TransformSpec::shift(), &ClopenSet::full(), &Point::seeded(4), 10).unwrap();
        assert!(tr.values().iter().all(|g| *g == rat(1, 1)));
        let tr = frequency_trace(&TransformSpec::shift(), &ClopenSet::of(&["1"]), &Point::periodic("", "10"), 6).unwrap();
        assert_eq!(tr.g(6), rat(1, 2));
    }

    #[test]
    fn counts_grow_by_at_most_one() {
        let tr = frequency_trace(&TransformSpec::shift(), &ClopenSet::of(&["1", "01"]), &Point::seeded(9), 200).unwrap();
        let values = tr.values();
        for n in 1..values.len() {
            let step = &values[n] * int(n as u64 + 1) - &values[n - 1] * int(n as u64);
            assert!(step == rat(0, 1) || step == rat(1, 1));
            assert!(step.is_integer());
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let tr = frequency_trace(&TransformSpec::odometer(), &ClopenSet::of(&["1"]), &Point::zeros(), 3).unwrap();
        let csv = tr.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,orbit_prefix,in_set,g_exact,g_decimal");
        assert_eq!(lines[1], "1,0,0,0/1,0.000000");
        assert_eq!(lines[2], "2,1,1,1/2,0.500000");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn odometer_frequencies_are_exact() {
        for w in Word::all_up_to(4) {
            let u = ClopenSet::cylinder(&w);
            let period = 1usize << w.len();
            let tr = frequency_trace(&TransformSpec::odometer(), &u, &Point::zeros(), period * 16).unwrap();
            for j in 1..=16 {
                assert_eq!(tr.g(period * j), dyadic(w.len()), "w={w} j={j}");
            }
        }
    }

    #[test]
    fn gn_examples() {
        let b = Budgets::default();
        let u = MeasureSpec::Uniform;
        let shift = TransformSpec::shift();
        let one = ClopenSet::of(&["1"]);
        let (s, mu) = gn_exceed_set(&shift, &one, &rat(1, 2), 1, 1, &u, &b).unwrap();
        assert_eq!((s, mu), (ClopenSet::of(&["1"]), rat(1, 2)));
        let (s, mu) = gn_exceed_set(&shift, &one, &rat(3, 4), 2, 2, &u, &b).unwrap();
        assert_eq!((s, mu), (ClopenSet::of(&["11"]), rat(1, 4)));
        let (s, _) = gn_exceed_set(&shift, &ClopenSet::empty(), &rat(0, 1), 1, 4, &u, &b).unwrap();
        assert!(s.is_empty());
        assert!(gn_exceed_set(&shift, &one, &rat(1, 2), 3, 2, &u, &b).is_err());
    }

    #[test]
    fn gn_matches_brute_force() {
        let b = Budgets::default();
        let m = MeasureSpec::Uniform;
        for t in [TransformSpec::shift(), TransformSpec::odometer()] {
            for u in [ClopenSet::of(&["1"]), ClopenSet::of(&["01", "110"])] {
                for r in [rat(1, 3), rat(1, 2), rat(3, 4)] {
                    for n in 1..=6u64 {
                        let (got, _) = gn_exceed_set(&t, &u, &r, n, n, &m, &b).unwrap();
                        let pre: Vec<ClopenSet> = (0..n as usize).map(|k| iterate_preimage(&t, &u, k).unwrap()).collect();
                        let depth = pre.iter().map(|s| s.depth()).max().unwrap();
                        let brute = ClopenSet::from_words(Word::all_of_length(depth).filter(|w| {
                            let c = pre.iter().filter(|s| s.contains_prefix(w.bits())).count() as u64;
                            int(c) > &r * int(n)
                        }));
                        assert_eq!(got, brute, "{} r={r} n={n}", t.name());
                    }
                }
            }
        }
    }

    #[test]
    fn gn_is_monotone_in_its_range() {
        let b = Budgets::default();
        let m = MeasureSpec::Uniform;
        let t = TransformSpec::shift();
        let u = ClopenSet::of(&["1"]);
        let r = rat(2, 3);
        let mut prev = rat(0, 1);
        for n_max in 2..=7 {
            let (_, mu) = gn_exceed_set(&t, &u, &r, 2, n_max, &m, &b).unwrap();
            assert!(mu >= prev);
            prev = mu;
        }
        let mut prev = rat(1, 1);
        for big_n in 1..=6 {
            let (_, mu) = gn_exceed_set(&t, &u, &r, big_n, 6, &m, &b).unwrap();
            assert!(mu <= prev);
            prev = mu;
        }
    }

    #[test]
    fn integral_examples() {
        let u = MeasureSpec::Uniform;
        assert_eq!(integral(&BasicFunction::indicator(&"".into()), &u), rat(1, 1));
        let f = BasicFunction::new([(rat(2, 1), "0".into()), (rat(1, 1), "10".into())]).unwrap();
        assert_eq!(integral(&f, &u), rat(5, 4));
        assert_eq!(integral(&BasicFunction::default(), &u), rat(0, 1));
        assert!(BasicFunction::new([(rat(-1, 1), "0".into())]).is_err());
    }

    #[test]
    fn lsc_examples() {
        let odo = TransformSpec::odometer();
        let f = LscFunction::from_stages(vec![
            BasicFunction::indicator(&"1".into()),
            BasicFunction::new([(rat(1, 1), "1".into()), (rat(1, 1), "01".into())]).unwrap(),
        ])
        .unwrap();
        assert_eq!(lsc_average(&f, 0, &odo, &Point::zeros(), 8).unwrap(), rat(1, 2));
        assert!(f.check_monotone(3, 8).is_ok());
        for seed in 0..4 {
            let p = Point::seeded(seed);
            let a0 = lsc_average(&f, 0, &TransformSpec::shift(), &p, 50).unwrap();
            let a1 = lsc_average(&f, 1, &TransformSpec::shift(), &p, 50).unwrap();
            assert!(a1 >= a0);
        }
        let one = LscFunction::from_stages(vec![BasicFunction::indicator(&"".into())]).unwrap();
        assert_eq!(lsc_average(&one, 3, &odo, &Point::seeded(1), 7).unwrap(), rat(1, 1));
    }

    #[test]
    fn non_monotone_stages_rejected() {
        let f = LscFunction::from_stages(vec![
            BasicFunction::indicator(&"1".into()),
            BasicFunction::indicator(&"11".into()),
        ])
        .unwrap();
        let err = f.check_monotone(1, 8).unwrap_err();
        assert!(err.to_string().contains("`10`"), "{err}");
    }

    #[test]
    fn approximable_sandwich() {
        let x = ApproximableSet::interval(ComputableReal::Exact(rat(1, 5)), ComputableReal::sqrt2_minus_1()).unwrap();
        for p in [2, 6, 10] {
            let (inner, outer) = (x.inner(p), x.outer(p));
            assert!(inner.is_subset(&outer));
            assert!(outer.uniform_measure() - inner.uniform_measure() <= dyadic(p));
        }
        let exact = ApproximableSet::Exact {
            set: ClopenSet::of(&["0"]),
        };
        let (lo, hi) = approximable_frequency(&exact, 4, &TransformSpec::shift(), &Point::seeded(2), 100).unwrap();
        assert_eq!(lo, hi);
        let (lo, hi) = approximable_frequency(&x, 8, &TransformSpec::shift(), &Point::seeded(2), 1).unwrap();
        assert!(lo <= hi);
        assert!(lo.is_integer() && hi.is_integer());
    }

    #[test]
    fn inner_subset_never_counts_more() {
        let u = ClopenSet::of(&["1", "01"]);
        let inner = ClopenSet::of(&["1"]);
        let p = Point::seeded(12);
        let a = frequency_trace(&TransformSpec::shift(), &u, &p, 300).unwrap().values();
        let b = frequency_trace(&TransformSpec::shift(), &inner, &p, 300).unwrap().values();
        assert!(a.iter().zip(&b).all(|(x, y)| y <= x));
    }

    #[test]
    fn odometer_experiment_is_exact() {
        let r = birkhoff_experiment(
            &TransformSpec::odometer(),
            &ClopenSet::of(&["11"]),
            &[Point::zeros()],
            64,
            &MeasureSpec::Uniform,
        )
        .unwrap();
        assert_eq!(r.points[0].g_n, rat(1, 4));
        assert_eq!(r.points[0].deviation, 0.0);
        assert_eq!(r.seeded_within_tolerance, None);
        let full = birkhoff_experiment(
            &TransformSpec::shift(),
            &ClopenSet::full(),
            &[Point::seeded(1), Point::zeros()],
            32,
            &MeasureSpec::Uniform,
        )
        .unwrap();
        assert_eq!(full.max_deviation, 0.0);
    }
}
