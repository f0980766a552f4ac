use thiserror::Error;

use crate::cantor::{Rational, Word};

/// Coarse classification used by front-ends to pick exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or schema violation.
    Input,
    /// A hypothesis of a construction does not hold.
    Precondition,
    /// A search or depth budget ran out.
    Budget,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown transform `{0}`")]
    UnknownTransform(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("transform `{0}` is approximable only; use preimage_approx")]
    NotExact(String),

    #[error("word of length {got} is too short, at least {required} bits are needed")]
    WordTooShort { required: usize, got: usize },

    #[error("could not produce {wanted} output bits from input prefixes up to {budget} bits")]
    InsufficientOutput { wanted: usize, budget: usize },

    #[error("clopen depth {depth} exceeds the depth budget {budget}")]
    DepthBudget { depth: usize, budget: usize },

    #[error(
        "no n <= {budget} satisfied the stopping rule; best average {best_average} against target {target}"
    )]
    SearchBudget {
        budget: u64,
        best_average: Box<Rational>,
        target: Box<Rational>,
    },

    #[error("shift generator exhausted after {pulled} pulls with {kept} admissible shifts (needed up to {needed})")]
    ShiftsExhausted {
        pulled: usize,
        kept: usize,
        needed: u64,
    },

    #[error("{}", trapped_message(*.coordinate, .v_measure, .orbit, *.cycle_detected))]
    PointTrapped {
        coordinate: usize,
        v_measure: Box<Rational>,
        orbit: Vec<Word>,
        cycle_detected: bool,
    },

    #[error("threshold set at coordinate {coordinate} has measure 1; the measure hypothesis is violated")]
    FullThresholdSet { coordinate: usize },
}

fn trapped_message(coordinate: usize, v_measure: &Rational, orbit: &[Word], cycle: bool) -> String {
    format!(
        "point trapped at coordinate {coordinate}: {} orbit prefixes all inside a threshold set of measure {v_measure}{}",
        orbit.len(),
        if cycle { " (orbit prefix cycle closed)" } else { "" }
    )
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Malformed(_) | Error::UnknownTransform(_) => ErrorKind::Input,
            Error::Precondition(_)
            | Error::NotExact(_)
            | Error::WordTooShort { .. }
            | Error::FullThresholdSet { .. } => ErrorKind::Precondition,
            Error::InsufficientOutput { .. }
            | Error::DepthBudget { .. }
            | Error::SearchBudget { .. }
            | Error::ShiftsExhausted { .. }
            | Error::PointTrapped { .. } => ErrorKind::Budget,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
