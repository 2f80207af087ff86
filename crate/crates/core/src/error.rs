use crate::partition::ValidationReport;
use thiserror::Error;

/// Library-wide error type. Checker verdicts are not errors; these cover
/// malformed inputs, violated preconditions and blown enumeration caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    #[error("subset has {got} vertices, expected r = {expected}")]
    WrongSubsetSize { expected: u32, got: usize },

    #[error("edge cap {cap} exceeded: instance has {count} edges")]
    CapExceeded { cap: u64, count: u128 },

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("instance outside scheme family: {0}")]
    FamilyMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
