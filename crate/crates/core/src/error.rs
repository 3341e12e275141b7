use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("color id {color} out of range (rank {rank})")]
    ColorOutOfRange { color: usize, rank: usize },

    #[error("point {point} out of range (degree {n})")]
    PointOutOfRange { point: usize, n: usize },

    #[error("color matrix has {got} entries, expected {expected}")]
    MatrixSize { got: usize, expected: usize },

    #[error("not a coherent configuration: {0}")]
    NotCoherent(String),

    #[error("relation is not a parabolic: {0}")]
    NotParabolic(String),

    #[error("point set is not a homogeneity set: {0}")]
    NotHomogeneitySet(String),

    #[error("not a partition of Z_{n}: {reason}")]
    NotPartition { n: usize, reason: String },

    #[error("algebraic isomorphism invalid: {0}")]
    InvalidAlgebraicIso(String),

    #[error("incompatible configurations: {0}")]
    Incompatible(String),

    #[error("{what} needs {needed} entries, cap is {cap} (raise --memory-cap)")]
    MemoryCap {
        what: &'static str,
        needed: u128,
        cap: usize,
    },

    #[error("{what}: {value} exceeds cap {cap} (flag {flag})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
        flag: &'static str,
    },

    #[error("section {0} is not in a singular class")]
    NotSingular(String),

    #[error("sections {0} and {1} are not projectively equivalent")]
    NotProjectivelyEquivalent(String, String),

    #[error("no extension exists: {0}")]
    NoExtension(String),

    #[error("extension not unique: {0} candidates")]
    NotUnique(usize),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
