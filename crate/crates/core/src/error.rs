use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("arities do not close the class: {0}")]
    InvalidArity(String),
    #[error("operand count {count} is not admissible for arity {arity}")]
    InadmissibleCount { arity: u64, count: usize },
    #[error("representative belongs to [[{found_a}]]_{found_b}, expected [[{a}]]_{b}")]
    ClassMismatch {
        a: String,
        b: String,
        found_a: String,
        found_b: String,
    },
    #[error("index {index} outside 1..={len}")]
    IndexRange { index: usize, len: usize },
    #[error("amplitude convention violated: {0}")]
    ConventionViolation(String),
    #[error("length mismatch: {plaintext} plaintext entries, {rings} rings")]
    LengthMismatch { plaintext: usize, rings: usize },
    #[error("no candidate found: {0}")]
    NotFound(String),
    #[error("sampling rate {rate} below twice the frequency {frequency}")]
    RateTooLow { rate: String, frequency: String },
    #[error("samples inconsistent with the waveform species: {0}")]
    SpeciesMismatch(String),
    #[error("waveform vanishes on every grid point")]
    DegenerateGrid,
    #[error("waveform value is irrational at t = {0}")]
    NonRationalSample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unsupported version {0}")]
    Version(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
