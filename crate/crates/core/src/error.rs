use alloc::boxed::Box;
use alloc::string::String;

use num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Degrees handed to a [`DegreeSequence`](crate::DegreeSequence) are not
    /// strictly increasing.
    #[error("degrees are not strictly increasing at position {position}")]
    NotIncreasing { position: usize },

    /// A subtraction left entry `(i, j)` negative.
    #[error("entry ({i}, {j}) would become negative")]
    NegativeEntry { i: usize, j: i64 },

    /// Column `column` is empty although a later column is not.
    #[error("column {column} is empty")]
    GapColumn { column: usize },

    /// Consecutive degree sequences of a decomposition do not form a strictly
    /// increasing chain; `position` is the index of the later term.
    #[error("decomposition terms {} and {position} do not form a chain", position - 1)]
    ChainViolation { position: usize },

    #[error("table is not in the Boij-Söderberg cone: {0}")]
    NotInBsCone(Box<Error>),

    /// The exact evaluation would produce a number with more than the
    /// permitted number of decimal digits.
    #[error("exact bound for N = {n} needs about {digits} digits (limit {limit})")]
    TooLarge { n: BigUint, digits: u64, limit: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
