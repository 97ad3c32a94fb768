use thiserror::Error;

/// Errors raised by the algebraic operations and the text front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("no standard factorization")]
    NoStandardFactorization,
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("letter y{0} outside alphabet")]
    LetterOutsideAlphabet(u32),
    #[error("law {law}: output y{letter} of weight {got} where weight {expected} is required")]
    WeightMismatch {
        law: String,
        letter: u32,
        got: u32,
        expected: u32,
    },
    #[error("{operation} requires {property} law")]
    Precondition {
        operation: &'static str,
        property: &'static str,
    },
    #[error("empty word has no {0}")]
    EmptyWord(&'static str),
    #[error("{0} requires constant term {1}")]
    ConstantTerm(&'static str, u8),
    #[error("not group-like")]
    NotGroupLike,
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("law file: {0}")]
    LawFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
