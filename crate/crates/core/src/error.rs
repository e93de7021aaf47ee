use thiserror::Error;

use crate::simple::Presentation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("braid groups need at least 2 strands, got {0}")]
    TooFewStrands(usize),

    #[error("at most {max} strands are supported, got {got}")]
    TooManyStrands { got: usize, max: usize },

    #[error("structure mismatch: expected {expected}, got {got}")]
    StructureMismatch {
        expected: Presentation,
        got: Presentation,
    },

    #[error("atom index {atom} out of range for {presentation}")]
    AtomOutOfRange {
        atom: usize,
        presentation: Presentation,
    },

    #[error("first argument does not left-divide the second")]
    NotADivisor,

    #[error("not a simple element of {presentation}: {reason}")]
    InvalidSimple {
        presentation: Presentation,
        reason: String,
    },

    #[error("partition is crossing: blocks containing {0} and {1} interleave")]
    CrossingPartition(usize, usize),

    #[error("negative letter at position {0} in a word required to be positive")]
    NegativeLetter(usize),

    #[error("{what} exceeds the guard ({value} > {limit})")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("element not found within radius {0}")]
    NotFound(usize),

    #[error("no solution found (search exhausted; this does not prove unsolvability)")]
    NoSolutionFound,

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Parse(#[from] crate::syntax::ParseError),
}
