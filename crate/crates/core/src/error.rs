use thiserror::Error;

#[derive(Debug, Error)]
pub enum GrcError {
    #[error("unknown group spec `{0}`")]
    UnknownGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group order {order} exceeds the size cap {cap}")]
    SizeCap { order: usize, cap: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{k} is not coprime to the conductor {e}")]
    NotCoprime { k: i64, e: u32 },

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("central element is not Galois-stable")]
    NotGaloisStable,

    #[error("character table failed verification: {0}")]
    Orthogonality(String),

    #[error("character table construction failed: {0}")]
    Dixon(String),

    #[error("table does not match group: {0}")]
    Mismatch(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("normal subgroup does not contain the commutator subgroup")]
    MissingCommutator,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = GrcError> = std::result::Result<T, E>;
