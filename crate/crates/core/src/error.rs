//! Error type shared by every subsystem.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bad prime {prime}: a denominator vanishes modulo it")]
    BadPrime { prime: u64 },

    #[error("bad dimension for {what}: {got}")]
    BadDimension { what: &'static str, got: usize },

    #[error("projection center meets a sampled secant of {variety}")]
    SecantViolation { variety: String },

    #[error("sampled tangency constraints did not stabilize after {samples} samples")]
    NonStabilizing { samples: usize },

    #[error("degenerate parametrization of {name}: {reason}")]
    DegenerateParametrization { name: String, reason: String },

    #[error("variety {name} carries no quadric ideal generators")]
    NoIdeal { name: String },

    #[error("primes {p1} and {p2} disagree on a kernel dimension ({d1} vs {d2})")]
    PrimeDisagreement { p1: u64, p2: u64, d1: usize, d2: usize },

    #[error("no root system of type {letter}{rank}")]
    BadType { letter: char, rank: usize },

    #[error("the action has no isolated fixed point with scalar isotropy")]
    NotEulerSource,

    #[error("model {name} is not of tube type")]
    NotTubeModel { name: String },

    #[error("invalid symbol system: {reason}")]
    InvalidSymbolSystem { reason: String },

    #[error("the chosen pair of translations misses the dense pair locus")]
    DegeneratePair,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
