use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: expected one of {expected:?}, found {found}")]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("temporal connective evaluated on a model without a successor function")]
    TemporalOnPropositional,

    #[error("atom `{0}` is not in the declared alphabet")]
    UnknownAtom(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid lasso: {0}")]
    InvalidLasso(String),

    #[error("world {world} out of range (model has {size} worlds)")]
    WorldOutOfRange { world: usize, size: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("search budget exceeded: {needed} candidates needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
