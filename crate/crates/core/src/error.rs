use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    Dimension { expected: usize, rows: usize, cols: usize },

    #[error("ring has {size} elements, above the enumeration cap of {cap}")]
    EnumerationCap { size: u128, cap: u128 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("incompatible subsets: {0}")]
    Incompatible(String),

    #[error("unknown variant {variant} for {what}")]
    UnknownVariant { what: &'static str, variant: u32 },

    /// Two distinct solutions were found for an inverse that is unique in theory.
    #[error("integrity fault: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
