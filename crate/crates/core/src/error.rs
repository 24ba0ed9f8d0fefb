use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or combining operations.
///
/// Tuples and symbols carried inside error values are rendered 1-based,
/// the same way they are printed everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} table entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("symbol {symbol} is outside 1..={order}")]
    SymbolOutOfRange { symbol: usize, order: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("position {position} is outside 0..{arity}")]
    PositionOutOfRange { position: usize, arity: usize },

    #[error("operation index {index} is out of range")]
    IndexOutOfRange { index: u128 },

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("the operation has no identity element")]
    NotAMonoid,

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("conjugate is not single-valued: tuple {tuple:?} conflicts with an earlier value")]
    NotFunctional { tuple: Vec<usize> },

    #[error("conjugate is not total: cell {cell:?} receives no value")]
    NotTotal { cell: Vec<usize> },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("variable x{0} has no value in the assignment")]
    UnboundVariable(usize),

    #[error("the base set is not an orthogonal set of operations")]
    NotOrthogonalBase,

    #[error("the operation is not a quasigroup")]
    NotAQuasigroup,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::CapacityExceeded(msg.into())
    }

    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
