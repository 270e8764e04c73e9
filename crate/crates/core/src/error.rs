use thiserror::Error;

use crate::builder::CaseLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid parameters: {0}")]
    InvalidLambdas(String),

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("operands belong to different weight types")]
    SpecMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not an extension datum: {0}")]
    NotExtensionDatum(String),

    #[error("arm {0} is not in the index set")]
    IndexNotInI(usize),

    #[error("no candidate presentation has an effective source determinant")]
    NotPositive,

    #[error("determinant {0} is not effective")]
    NotEffective(String),

    #[error("power {power} on arm {arm} outside 1..={max}")]
    PowerOutOfRange { arm: usize, power: i64, max: i64 },

    #[error("invalid cokernel datum: {0}")]
    InvalidDatum(String),

    #[error("arrow {arrow}: expected {expected:?}, got {got:?}")]
    ShapeMismatch { arrow: String, expected: (usize, usize), got: (usize, usize) },

    #[error("canonical relation for arm {0} does not hold")]
    RelationViolated(usize),

    #[error("map is not a morphism: square at arrow {0} does not commute")]
    NotAMorphism(String),

    #[error("map is not injective at vertex {0}")]
    NotInjective(String),

    #[error("closed form needs case {expected}, datum is case {got}")]
    WrongCase { expected: CaseLabel, got: CaseLabel },

    #[error("cokernel conditions failed: {0}")]
    ConditionsFailed(String),

    #[error("internal error: {0}")]
    Internal(String),
}
