use thiserror::Error;

/// Errors raised by the algebraic operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic factor 1 is not allowed in a group presentation")]
    FactorOne,
    #[error("expected {expected} coordinates, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("maps are not composable: {0}")]
    CompositionMismatch(String),
    #[error("operation needs a finite group, got {0}")]
    InfiniteGroup(String),
    #[error("2-cochain is not normalized at {0}")]
    NotNormalized(String),
    #[error("search space of {space} candidates exceeds the budget of {budget}")]
    SearchTooLarge { space: String, budget: u64 },
    #[error("torsion condition violated: {0}")]
    TorsionViolation(String),
    #[error("invalid symmetric 3-cocycle: {0}")]
    InvalidCocycle(String),
    #[error("invalid symmetric monoidal functor: {0}")]
    InvalidFunctor(String),
    #[error("groupoid is not permutative (associator is nonzero)")]
    NotPermutative,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("groups are presented differently: {0}")]
    PresentationMismatch(String),
    #[error("enumeration of {needed} instances exceeds the budget of {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
