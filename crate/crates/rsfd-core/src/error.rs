//! Error type shared by the codec, solvers, and decoders.

use core::fmt;

/// Everything that can go wrong between constructing a field and repairing a
/// received word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Attempted to invert the zero element.
    ZeroInversion,
    /// An enumeration index fell outside `[0, 2^m)`.
    IndexOutOfRange { index: usize, limit: usize },
    /// A sequence had the wrong length for the requested operation.
    LengthMismatch { expected: usize, got: usize },
    /// Structurally invalid input (bad parameters, empty data, ...).
    MalformedInput(&'static str),
    /// The error-count probe requires an even truncation bound.
    OddT0 { t0: usize },
    /// Requested more power syndromes than the code provides.
    CountOutOfRange { count: usize, limit: usize },
    /// An error position below `2t` without the unsafe override; the
    /// decoders assume all errors sit in `[2t, n)`.
    IndexViolation { index: usize, min: usize },
    /// The received word cannot be repaired; `stage` names the check that
    /// failed.
    Undecodable { stage: &'static str },
    /// Root search found a different number of locations than the solver
    /// inferred.
    InconsistentCount { expected: usize, found: usize },
    /// The syndrome sequence is inconsistent with the declared error count.
    DegenerateInput(&'static str),
    /// Forney division hit a zero denominator at the given position.
    ZeroDenominator { index: usize },
    /// Two instrumented trials with identical parameters reported different
    /// operation counts.
    CountMismatch { label: &'static str, first: u64, second: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInversion => write!(f, "inversion of zero"),
            Error::IndexOutOfRange { index, limit } => {
                write!(f, "index {index} out of range (limit {limit})")
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::MalformedInput(what) => write!(f, "malformed input: {what}"),
            Error::OddT0 { t0 } => write!(f, "t0 must be even, got {t0}"),
            Error::CountOutOfRange { count, limit } => {
                write!(f, "syndrome count {count} exceeds limit {limit}")
            }
            Error::IndexViolation { index, min } => {
                write!(f, "error position {index} below minimum {min}")
            }
            Error::Undecodable { stage } => write!(f, "undecodable: {stage}"),
            Error::InconsistentCount { expected, found } => {
                write!(f, "root count {found} does not match inferred error count {expected}")
            }
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::ZeroDenominator { index } => {
                write!(f, "zero denominator in error-value formula at position {index}")
            }
            Error::CountMismatch { label, first, second } => {
                write!(f, "operation counts disagree for {label}: {first} vs {second}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
