use thiserror::Error;

/// Errors shared by all growthlab operations.
///
/// Arithmetic never wraps: any coordinate that would leave `i64` range is
/// reported as [`Error::Overflow`] instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements belong to different groups")]
    SpecMismatch,

    #[error("integer overflow in exact group arithmetic")]
    Overflow,

    #[error("invalid group specification: {0}")]
    InvalidSpec(String),

    #[error("invalid element coordinates: {0}")]
    InvalidElement(String),

    #[error("element budget exceeded: needed {needed} elements, limit is {limit}")]
    BudgetExceeded { needed: usize, limit: usize },

    #[error("set is empty where a non-empty set is required")]
    EmptySet,

    #[error("set is not symmetric")]
    NotSymmetric,

    #[error("set does not contain the identity")]
    MissingIdentity,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("semigroup certificate is not proven")]
    CertificateNotProven,

    #[error("inner-ball criterion fails at h = {h}")]
    CriterionFailed { h: u32 },

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
