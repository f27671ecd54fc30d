use thiserror::Error;

/// Errors raised by the sequence, plot and oracle APIs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("positions are 1-based; index 0 is not a position")]
    ZeroIndex,
    #[error("symbol {0} is not in the alphabet {{0, 1}}")]
    InvalidSymbol(u8),
    #[error("recurrence plot needs n >= 2, got n = {0}")]
    PlotTooSmall(u64),
    #[error("embedding dimension must be at least 1")]
    ZeroEmbedding,
    #[error("word of length {got} is too short for an n = {n}, m = {m} plot (needs {needed})")]
    WordTooShort { n: u64, m: u64, needed: u64, got: u64 },
    #[error("the main diagonal cell ({0}, {0}) is not a line start")]
    MainDiagonal(u64),
    #[error("line length must be at least 1")]
    ZeroLength,
    #[error("length {0} is not a diagonal-line length of the period-doubling plot")]
    DisallowedLength(u64),
    #[error("determinism classes are defined for line length >= 2, got {0}")]
    DetClassLength(u64),
    #[error("distance threshold must be a finite positive number, got {0}")]
    InvalidThreshold(f64),
    #[error("quantifiers need a diagonal-line histogram")]
    NotDiagonal,
}

pub type Result<T> = std::result::Result<T, Error>;
