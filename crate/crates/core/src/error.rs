use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable `{0}` has no assigned value")]
    MissingVariable(String),
    #[error("cannot certify pivot `{pivot}` as nonzero under the given constraints")]
    UndecidedPivot { pivot: String },
    #[error("scalar domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("exact radical requires characteristic zero")]
    CharNotZero,
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("constraint violated: {0} vanishes")]
    ConstraintViolated(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in field `{0}`")]
    Schema(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("search budget exceeded: {nodes} nodes > limit {limit}")]
    BudgetExceeded { nodes: u64, limit: u64 },
    #[error("group element does not preserve complement: {0}")]
    GroupMismatch(String),
    #[error("subspaces do not form a direct sum")]
    NotDirectSum,
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
