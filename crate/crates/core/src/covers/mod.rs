//! Constructive covers of invariant cores `A*`.
//!
//! Every construction returns a [`CoverCertificate`]: the stage sets together
//! with a measure bound per stage, checked in exact rationals. Apart from the
//! ergodic cover, which takes an arbitrary computable measure, all
//! constructions work under the uniform measure.

mod ergodic;
mod independent;
mod kucera;

use serde::{Deserialize, Serialize};

pub use ergodic::{
    average_star_direct, average_star_shifted, ergodic_cover, ergodic_cover_iterate, l2_average_distance,
};
pub use independent::{bidirectional_cover, enumerable_shift_cover, lemma1_holds, lemma1_k, select_shifts};
pub use kucera::{
    block_factorization_witness, finite_change_certificate, finite_change_cover, kucera_iterate,
    kucera_iterate_assumed, kucera_step, prefix_addition_cover, prefix_family, prefix_family_rounds,
    Factorization, PrefixFamily,
};

use crate::cantor::rational::{serde_rational, serde_rational_opt, Rational};
use crate::cantor::{ClopenSet, MeasureSpec, Word};
use crate::error::{Error, Result};
use crate::transforms::{serde_assignment_opt, BiAssignment};

/// Limits that keep constructions from running away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest clopen depth a construction may build.
    pub depth: usize,
    /// Largest `n` tried by the ergodic search.
    pub n: u64,
    /// Largest `n` for which the L2 stopping rule is evaluated.
    pub l2_n: u64,
    /// Largest number of shifts pulled from a generator.
    pub pulls: usize,
    /// Largest prefix family.
    pub family: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            depth: 1 << 12,
            n: 1 << 12,
            l2_n: 64,
            pulls: 1 << 16,
            family: 1 << 16,
        }
    }
}

/// Bits of precision of the rational square-root bound in the L2 rule.
pub const SQRT_BITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Kucera,
    FiniteChange,
    PrefixAddition,
    Bidirectional,
    EnumerableShift,
    Ergodic,
}

impl Construction {
    /// Constructions whose certificates list successive refinements.
    pub fn iterates(self) -> bool {
        matches!(self, Construction::Kucera | Construction::Ergodic)
    }
}

/// `exact` certificates are checked; `assumed` ones rest on an asserted
/// bound for an enumerated input and are never marked verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Assumed,
}

/// How the ergodic search decided to stop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StoppingRule {
    /// `μ(A)μ(I) + sqrt(‖a_n − μ(I)‖²) < rμ(I)`.
    CauchySchwarz,
    /// The average `(1/(n+1)) Σ μ(I ∩ T^-i(A)) <= rμ(I)`, computed directly.
    ExactAverage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(default, with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub s: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub big_n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuel: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Word>,
    #[serde(default, with = "serde_assignment_opt", skip_serializing_if = "Option::is_none")]
    pub x_bi: Option<BiAssignment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stopping_rule: Option<StoppingRule>,
}

impl Params {
    pub fn new(r: Rational) -> Self {
        Params {
            r,
            s: None,
            k: None,
            n: None,
            big_n: None,
            fuel: None,
            x: None,
            x_bi: None,
            shifts: None,
            transform: None,
            stopping_rule: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub set: ClopenSet,
    #[serde(with = "serde_rational")]
    pub measure: Rational,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub construction: Construction,
    pub params: Params,
    pub stages: Vec<Stage>,
    pub verified: bool,
    pub mode: Mode,
    pub measure: MeasureSpec,
}

/// Outcome of re-checking one stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    pub recomputed: Rational,
    pub matches_recorded: bool,
    pub within_bound: bool,
}

impl CoverCertificate {
    pub(crate) fn build(
        construction: Construction,
        params: Params,
        measure: MeasureSpec,
        mode: Mode,
        stages: Vec<(ClopenSet, Rational)>,
    ) -> Self {
        let stages: Vec<Stage> = stages
            .into_iter()
            .map(|(set, bound)| Stage {
                measure: set.measure(&measure),
                set,
                bound,
            })
            .collect();
        let mut cert = CoverCertificate {
            construction,
            params,
            stages,
            verified: false,
            mode,
            measure,
        };
        cert.verified = mode == Mode::Exact && cert.bounds_hold();
        cert
    }

    fn bounds_hold(&self) -> bool {
        let decreasing = !self.construction.iterates() || self.stages.windows(2).all(|w| w[1].bound < w[0].bound);
        decreasing && self.stages.iter().all(|s| s.measure <= s.bound)
    }

    /// Recomputes every stage measure from the stored set.
    pub fn check_stages(&self) -> Vec<StageCheck> {
        self.stages
            .iter()
            .map(|s| {
                let recomputed = s.set.measure(&self.measure);
                StageCheck {
                    matches_recorded: recomputed == s.measure,
                    within_bound: recomputed <= s.bound,
                    recomputed,
                }
            })
            .collect()
    }

    /// True when the recorded measures are exact, every bound holds, bounds
    /// decrease across iterated stages, and the `verified` flag is consistent
    /// with all of that.
    pub fn reverify(&self) -> bool {
        let checks = self.check_stages();
        let sound = checks.iter().all(|c| c.matches_recorded && c.within_bound) && self.bounds_hold();
        let expected_flag = self.mode == Mode::Exact && sound;
        checks.iter().all(|c| c.matches_recorded) && self.verified == expected_flag
    }

    /// The last stage, the sharpest cover.
    pub fn final_stage(&self) -> &Stage {
        self.stages.last().expect("certificates have at least one stage")
    }

    /// Canonical JSON: object keys sorted, no insignificant whitespace.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("certificates serialize");
        serde_json::to_string(&v).expect("values serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("certificate: {e}")))
    }
}

pub(crate) fn check_unit(value: &Rational, name: &str) -> Result<()> {
    if *value < Rational::from_integer(0.into()) || *value >= Rational::from_integer(1.into()) {
        return Err(Error::precondition(format!("{name} = {value} must lie in [0, 1)")));
    }
    Ok(())
}

pub(crate) fn check_measure_at_most(set: &ClopenSet, bound: &Rational, m: &MeasureSpec) -> Result<Rational> {
    let got = set.measure(m);
    if got > *bound {
        return Err(Error::precondition(format!("measure(a) = {got} exceeds r = {bound}")));
    }
    Ok(got)
}

pub(crate) fn check_r_below_s(r: &Rational, s: &Rational) -> Result<()> {
    check_unit(r, "r")?;
    check_unit(s, "s")?;
    if r >= s {
        return Err(Error::precondition(format!("r = {r} must be below s = {s}")));
    }
    Ok(())
}
