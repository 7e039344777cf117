use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("degenerate relation graph: {0}")]
    DegenerateGraph(String),

    #[error("d1 does not extend to a derivation: {0}")]
    NotADerivation(String),

    #[error("morphism does not preserve relations: {0}")]
    RelationNotPreserved(String),

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("augmentation is not a ring homomorphism: {0}")]
    BadAugmentation(String),

    #[error("characteristic guard: {0}")]
    CharacteristicGuard(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}
