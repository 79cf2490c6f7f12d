use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {n} is not supported (maximum {max})")]
    UnsupportedVariableCount { n: usize, max: usize },

    #[error("exhaustive enumeration at n = {n} is not supported (maximum {max})")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("operation needs at least {min} variables, got {n}")]
    TooFewVariables { n: usize, min: usize },

    #[error("variable x{i} is out of range for a {n}-variable function")]
    VariableOutOfRange { i: usize, n: usize },

    #[error("truth index {t} is out of range (table has {len} rows)")]
    IndexOutOfRange { t: usize, len: usize },

    #[error("table integer has bits set above 2^{n}")]
    TableOverflow { n: usize },

    #[error("expected {expected} {what}, found {found}")]
    WrongLength {
        expected: usize,
        found: usize,
        what: &'static str,
    },

    #[error("invalid character in truth table {text:?}")]
    InvalidCharacter { text: String },

    #[error("hex tables need at least 2 variables, got {n}")]
    HexTooShort { n: usize },

    #[error("a table of {len} bits is not a power-of-two length in the supported range")]
    UnknownLength { len: usize },

    #[error("functions have different variable counts ({left} and {right})")]
    ArityMismatch { left: usize, right: usize },

    #[error("source set contains non-canalizing function {table}")]
    NonCanalizingSource { table: String },

    #[error("source set is empty")]
    EmptySource,

    #[error("function {table} is neither canalizing nor constant")]
    NotCanalizing { table: String },

    #[error("function {table} is not at distance 1 from a constant")]
    NotUnitDistance { table: String },

    #[error("no check named {name}")]
    UnknownCheck { name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
