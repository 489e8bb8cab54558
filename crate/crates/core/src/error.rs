//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong in the library, with enough structure for a
/// frontend to map each case onto a stable exit category.
#[derive(Debug, Error)]
pub enum Error {
    /// Braid-word syntax or range violations (zero letters, |g| >= strands, odd strand count).
    #[error("invalid braid word: {0}")]
    InvalidBraidWord(String),

    /// A braid word was used with a structure built for a different strand count or root.
    #[error("mismatched operands: {0}")]
    Mismatch(String),

    /// The exact state-sum evaluator refused a word longer than its budget.
    #[error("oracle budget exceeded: word has {crossings} crossings, budget is {budget}")]
    OracleBudget { crossings: usize, budget: usize },

    /// A desk-scale guard (matrix dimension, tensor dimension) was exceeded.
    #[error("{what} = {value} exceeds the guard {limit}")]
    DimensionGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    /// A numeric parameter violated its documented bound; the message names the bound.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
