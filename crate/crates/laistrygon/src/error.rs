use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible modulo the cyclotomic polynomial")]
    NonInvertible,
    #[error("scalar modes do not match: {0} vs {1}")]
    ModeMismatch(String, String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("rewrite step budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("confluence failure on overlap {0}")]
    ConfluenceFailure(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("Ore verification failed at stage {stage} on generator {generator}: {detail}")]
    OreFailure {
        stage: String,
        generator: String,
        detail: String,
    },
    #[error("relation {relation} fails at index {index}")]
    RelationFailure { relation: String, index: usize },
    #[error("system equation failed: {0}")]
    SystemFailure(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("generator index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("point (a0:b0:c0) with a0, c0 both nonzero is not on V(X0 X2); no point module exists")]
    NotOnVariety,
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
