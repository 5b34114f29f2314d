use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("field of order {q} exceeds the table cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },

    #[error("zero has no discrete logarithm")]
    ZeroElement,

    #[error("{lambda} does not divide q - 1 = {q_minus_one}")]
    NotADivisor { lambda: u64, q_minus_one: u64 },

    #[error("repeated constraint point at index {0}")]
    RepeatedConstraint(usize),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("block shape: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search budget of {nodes} nodes exhausted (deepest level {deepest}, last empty set {empty_set})")]
    BudgetExhausted {
        nodes: u64,
        deepest: usize,
        empty_set: String,
    },

    #[error("search space exhausted without a solution (deepest level {deepest}, last empty set {empty_set})")]
    NoSolution { deepest: usize, empty_set: String },

    #[error("object of size {required} exceeds cap {cap}")]
    CapExceeded { required: u128, cap: u128 },

    #[error("verification failed: {0}")]
    NotVerified(String),

    #[error("{message} at line {line}, column {column}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
