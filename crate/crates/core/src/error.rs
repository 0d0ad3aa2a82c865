use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors across the workbench. Inconclusive variants are honest escape
/// hatches: they are never silently converted into negative verdicts.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),

    #[error("decomposition inconclusive: {0}")]
    DecompositionInconclusive(String),

    #[error("isomorphism test inconclusive: {0}")]
    IsoInconclusive(String),

    #[error("minimality verification inconclusive: {0}")]
    MinimalityInconclusive(String),

    #[error("n-kernel escapes the subcategory: {0}")]
    NKernelEscapesM(String),

    #[error("approximation not surjective: {0}")]
    ApproxNotSurjective(String),

    #[error("class representative escapes the subcategory: {0}")]
    RepresentativeEscapesM(String),

    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),

    #[error("universe too large: {0}")]
    UniverseTooLarge(String),

    #[error("module violates algebra relations: {0}")]
    RelationViolated(String),

    #[error("check not applicable: {0}")]
    NotApplicable(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for the honest "could not decide" family of outcomes.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::DecompositionInconclusive(_)
                | Error::IsoInconclusive(_)
                | Error::MinimalityInconclusive(_)
                | Error::EnumerationTooLarge(_)
                | Error::NotApplicable(_)
        )
    }
}
