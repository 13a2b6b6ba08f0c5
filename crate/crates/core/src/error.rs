use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("no samples")]
    NoSamples,
    #[error("negative time: {0}")]
    NegativeTime(f64),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("symbol {symbol} outside alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },
    #[error("block over wrong alphabet (block size {block}, sequence size {sequence})")]
    AlphabetMismatch { block: usize, sequence: usize },
    #[error("block length {block} exceeds sequence length {sequence}")]
    BlockTooLong { block: usize, sequence: usize },
    #[error("invalid step function: {0}")]
    InvalidCdf(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),
    #[error("non-stochastic matrix: {0}")]
    NonStochastic(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("desk-scale guard violated: {0}")]
    TooLarge(String),
    #[error("insufficient occurrences: need {needed}, found {found}")]
    InsufficientOccurrences { needed: usize, found: usize },
    #[error("zero occurrences of block")]
    ZeroOccurrences,
    #[error("words not found: {0}")]
    WordsNotFound(String),
    #[error("alphabet too small: {0}")]
    AlphabetTooSmall(String),
    #[error("mean violation: expected {expected}, found {found}")]
    MeanViolation { expected: f64, found: f64 },
    #[error("horizon too small: tail mass {tail} beyond horizon {horizon}")]
    HorizonTooSmall { horizon: usize, tail: f64 },
    #[error("stationary distribution is not unique; supply an initial vector")]
    NoUniqueStationary,
}

pub type Result<T> = core::result::Result<T, Error>;
