use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("modulus has degree {found}, expected monic of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("field of order {0} is too large for packed element codes")]
    FieldTooLarge(String),

    #[error("recovered L-polynomial coefficient a_{index} is not an integer")]
    NonIntegralCoefficient { index: usize },
    #[error("functional equation a_(2g-i) = q^(g-i) a_i violated")]
    FunctionalEquationViolated,
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("not a q-Weil polynomial: {0}")]
    NotWeil(String),

    #[error("hyperelliptic right-hand side is not squarefree")]
    NotSquarefree,
    #[error("singular point over extension of degree {k}: {point}")]
    SingularPointFound { k: u32, point: String },
    #[error("enumeration of {requested} field elements exceeds budget {budget}")]
    BudgetExceeded { requested: String, budget: u64 },
    #[error("invalid curve model: {0}")]
    InvalidModel(String),

    #[error("{divisor} does not divide q+1-N_1 = {value}")]
    NotDivisible { divisor: i64, value: i64 },
    #[error("impossible point counts: {0}")]
    ImpossibleCounts(String),
    #[error("case bound requires q to be a perfect square (q = {0})")]
    CaseRequiresSquareQ(i64),
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("corpus: {0}")]
    Corpus(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
