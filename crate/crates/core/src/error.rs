use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("matrix row {row} has length {len}, expected {n}")]
    RaggedMatrix { row: usize, len: usize, n: usize },

    #[error("empty matrix")]
    Empty,

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid period-2 spec: {0}")]
    InvalidSpec(String),

    #[error("first row is not a palindrome: b(1,{j}) != b(1,{mirror})")]
    NotPalindrome { j: usize, mirror: usize },

    #[error("quiver is not period 2 for {0}")]
    NotPeriod2(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid search job: {0}")]
    InvalidJob(String),

    #[error("division by zero{0}")]
    ZeroDivision(String),

    #[error("non-monomial divisor")]
    NonMonomialDivisor,

    #[error("quotient is not a Laurent polynomial at step {step}, vertex {vertex}")]
    NotLaurent { step: usize, vertex: usize },

    #[error("initial window too small: sequence {seq} needs {needed} values, got {got}")]
    WindowTooSmall { seq: String, needed: usize, got: usize },

    #[error("sequence too short: {0}")]
    SequenceTooShort(String),

    #[error("exponent too large: {0}")]
    ExponentTooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
