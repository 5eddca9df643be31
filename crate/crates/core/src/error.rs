use thiserror::Error;

/// Failures of the lemma operations.
///
/// `PreconditionViolated` means the caller handed in something outside the
/// operation's contract; when the violation has a concrete certificate (a
/// house copy, an oversized anticomponent, a low-degree vertex) it is carried
/// in `witness`. `InternalInvariantViolated` is reserved for states that the
/// underlying argument rules out on valid inputs, so seeing it means a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {what}")]
    PreconditionViolated { what: String, witness: Vec<usize> },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),

    #[error("sampling budget exhausted after {attempts} attempts: {what}")]
    SamplingBudgetExhausted { what: String, attempts: u32 },

    #[error("block finder breached its contract in {lemma}: {detail}")]
    ContractBreach { lemma: String, detail: String },

    #[error("graph has {n} vertices, above the limit of {limit}")]
    SizeCap { n: usize, limit: usize },

    #[error("rejection budget exhausted after {attempts} attempts: {what}")]
    RejectionBudgetExhausted { what: String, attempts: u32 },
}

impl Error {
    pub fn precondition(what: impl Into<String>) -> Self {
        Error::PreconditionViolated {
            what: what.into(),
            witness: Vec::new(),
        }
    }

    pub fn precondition_with(what: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::PreconditionViolated {
            what: what.into(),
            witness,
        }
    }

    pub fn internal(what: impl Into<String>) -> Self {
        Error::InternalInvariantViolated(what.into())
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalInvariantViolated(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
