use thiserror::Error;

use crate::cartan::RootSum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point is a pole")]
    Pole,
    #[error("cannot evaluate at zero")]
    InvalidEvaluationPoint,
    #[error("q-exponent is not integral in v for this session root")]
    FractionalExponent,
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("unknown root datum `{0}`")]
    UnknownDatum(String),
    #[error("weight has {got} coordinates, datum has rank {expected}")]
    WeightRank { expected: usize, got: usize },
    #[error("simple root index {0} out of range")]
    InvalidIndex(usize),
    #[error("Serre element needs distinct indices, got ({0}, {0})")]
    SameSerreIndices(usize),
    #[error("parabolic highest weight pairs nontrivially with Levi root {0}")]
    ParabolicCharacter(usize),
    #[error("drop {0} lies beyond the materialized cutoff")]
    OutOfRange(RootSum),
    #[error("drop {0} has no materialized weight space")]
    NotMaterialized(RootSum),
    #[error("height cutoff {requested} exceeds the materialized cutoff {available}")]
    CutoffExceeded { requested: u32, available: u32 },
    #[error("modules were built in different sessions")]
    SessionMismatch,
    #[error("vector does not lie in the expected space: {0}")]
    Inconsistent(String),
    #[error("singular vectors at drop {0} are not parametrized by V-leading coefficients (a factor is reducible)")]
    LeadingMismatch(RootSum),
    #[error("module is not finite-dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
