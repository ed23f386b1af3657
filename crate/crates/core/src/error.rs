use thiserror::Error;

/// Failures of the certified numerical layer.
///
/// `PrecisionExhausted`, `AmbiguousComparison` and `AmbiguousMembership` are
/// retryable: recomputing the roots at a higher precision may resolve them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not squarefree (zero discriminant)")]
    NotSquarefree,
    #[error("root disks could not be certified at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("interval comparison straddles a threshold")]
    AmbiguousComparison,
    #[error("root disk {root} straddles a region boundary")]
    AmbiguousMembership { root: usize },
    #[error("no derivative order meets the lower bound at root {root}")]
    NoWitness { root: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
}

impl Error {
    /// Whether a higher working precision could make this error go away.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted { .. }
                | Error::AmbiguousComparison
                | Error::AmbiguousMembership { .. }
        )
    }
}
