use thiserror::Error;

use crate::netparse::ParseError;

/// Errors raised by model construction, dynamics and analysis.
///
/// Component indices are stored 0-based but rendered 1-based (`g1`, `g2`, ...)
/// in messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("model has no components")]
    EmptyModel,
    #[error("model has {n} components; the supported maximum is {max}")]
    TooManyComponents { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected} components, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("component g{} is out of range for a model with {n} components", .index + 1)]
    IndexOutOfRange { index: usize, n: usize },
    #[error("component set must not be empty")]
    EmptyComponentSet,
    #[error("duplicate component name `{0}`")]
    DuplicateName(String),
    #[error("invalid component name `{0}`")]
    InvalidName(String),
    #[error("truth table of g{} has {found} entries, expected {expected}", .index + 1)]
    TableSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid state `{0}`: expected a non-empty string of '0'/'1'")]
    InvalidState(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid update family: {0}")]
    InvalidFamily(#[from] FamilyError),
    #[error("invalid update mode `{0}`")]
    InvalidMode(String),
    #[error("{what} is limited to n <= {cap}, but the model has n = {n}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("g{} is declared as an input but its rule is not the identity", .index + 1)]
    NotAnInput { index: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid generator parameters: {0}")]
    InvalidGenSpec(String),
}

/// Reasons a family of component sets is not a valid update family.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("the family is empty")]
    Empty,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("part {part} mentions component {} but n = {n}", .index + 1)]
    OutOfRange { part: usize, index: usize, n: usize },
    #[error("part {0} occurs more than once")]
    DuplicatePart(usize),
    #[error("components {} are not covered", fmt_uncovered(.0))]
    Uncovered(Vec<usize>),
    #[error("cannot parse family `{0}`")]
    Syntax(String),
}

fn fmt_uncovered(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
