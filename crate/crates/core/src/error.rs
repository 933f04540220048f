use thiserror::Error;

/// Errors raised by the library. Validation errors describe malformed input;
/// budget errors mean the request is well-formed but too large.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("homomorphisms do not share a target group")]
    MixedTargets,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("target of the homomorphism is not the base of the step")]
    TargetMismatch,
    #[error("inertia at place `{0}` acts nontrivially but the place is not declared ramified")]
    RamificationMismatch(String),
    #[error("local data incompatible with the global homomorphism at place `{0}`")]
    IncompatibleLocalData(String),
    #[error("inadmissible local data: {0}")]
    Inadmissible(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("extension kernel is not abelian")]
    NotAbelianKernel,
    #[error("truncation level {available} is insufficient, need {needed}")]
    TruncationInsufficient { needed: usize, available: usize },
    #[error("cohomological degree {degree} exceeds the limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("arithmetic failure: {0}")]
    Arithmetic(String),
}

impl Error {
    /// Whether the error reflects an exhausted budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SearchBudgetExceeded(_) | Error::DegreeTooLarge { .. } | Error::TruncationInsufficient { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
