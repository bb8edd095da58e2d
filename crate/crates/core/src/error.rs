//! Error type shared across the library.

/// Errors surfaced by the symbolic kernel and the verification layers.
///
/// Pure arithmetic on well-formed inputs never fails; every variant here
/// corresponds to a violated precondition that user input (CLI arguments,
/// expression JSON, sample points) can actually trigger.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("variable name {0:?} is not one of the supported chart symbols")]
    InvalidVarName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVarName(String),
    #[error("variable tables differ: [{0}] vs [{1}]")]
    VarTableMismatch(String, String),
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("substitution produced an identically zero denominator in {0}")]
    SubstitutionZeroDenominator(String),
    #[error("evaluation hit a zero denominator at {0}")]
    EvalAtPole(String),
    #[error("point does not assign a value to variable {0:?}")]
    MissingVariable(String),
    #[error("index {0} does not occur in the reduced word; the action is undefined there")]
    IndexNotInWord(usize),
    #[error("formula {0:?} is not verified positive; tropicalization is undefined")]
    NotVerifiedPositive(String),
    #[error("valuation undefined: substitution yielded the zero function")]
    UndefinedValuation,
    #[error("term budget exceeded: needed about {needed} term products, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("unknown formula name {0:?}")]
    UnknownFormula(String),
    #[error("malformed expression JSON: {0}")]
    Expr(String),
}

pub type Result<T> = std::result::Result<T, Error>;
