use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is valid but the decomposition rule does not apply to it.
    #[error("not covered: {0}")]
    NotCovered(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// The action tables admit no scalars satisfying the algebra relations.
    #[error("inconsistent table: {0}")]
    InconsistentTable(String),

    #[error("basis vector w_{0} is not reachable from w_0")]
    Unreachable(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
