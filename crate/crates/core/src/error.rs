use thiserror::Error;

/// Errors reported by the arithmetic, circuit and simulation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid trit encoding (hi={hi}, lo={lo})")]
    InvalidTrit { hi: bool, lo: bool },

    #[error("invalid trit value {0}, expected 0, 1 or 2")]
    InvalidTritValue(u8),

    #[error("invalid character {found:?} at position {position}, expected a ternary digit")]
    InvalidDigit { position: usize, found: char },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("expected length {expected}, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("polynomial of length {len} exceeds the maximum {max}")]
    TooLong { len: usize, max: usize },

    #[error("method parse error at position {position}: {message}")]
    MethodParse { position: usize, message: String },

    #[error("operand length {actual} is not supported by a method of length {operand_length}")]
    UnsupportedLength { actual: usize, operand_length: usize },

    #[error("digit size {0} out of range 1..=97")]
    DigitSize(usize),

    #[error("multiplier already finished after {cycles} cycles")]
    Finished { cycles: usize },

    #[error("coefficient c{index} has nonzero s-component {residual}")]
    FormulaDiscrepancy { index: usize, residual: String },

    #[error("expected {expected} colon-separated components, found {found}")]
    ComponentCount { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
