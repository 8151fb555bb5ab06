use thiserror::Error;

/// Errors raised by the algebra engines and the input layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("free module rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {count} variables")]
    VariableIndex { index: usize, count: usize },

    #[error("homological index {index} out of range 1..={max}")]
    HomologicalIndex { index: usize, max: usize },

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("{0} requires characteristic zero (field is F_{1})")]
    CharacteristicGate(&'static str, u32),

    #[error("{0}: the unit ideal is not allowed here")]
    UnitIdeal(&'static str),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("containment {what} fails; witness generator {witness}")]
    ContainmentFailure { what: String, witness: String },

    #[error("budget exceeded during {stage} (last completed index {last_completed})")]
    BudgetExceeded { stage: String, last_completed: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("engine inconsistency: {0}")]
    EngineInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
