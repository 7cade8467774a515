use thiserror::Error;

/// Errors raised by word, morphism and derivation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: expected {{{expected}}}, found {{{found}}}")]
    AlphabetMismatch { expected: String, found: String },

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),

    #[error("length {requested} out of range (at most {available})")]
    OutOfRange { requested: usize, available: usize },

    #[error("{0} is not a factor")]
    NotAFactor(String),

    #[error("{0} is not a prefix of the fixed point")]
    NotAPrefix(String),

    #[error("insufficient data for {factor}: scanned {scanned} letters")]
    InsufficientData { factor: String, scanned: usize },

    #[error("not a substitution: {0}")]
    NotASubstitution(String),

    #[error("{0} is not primitive")]
    NonPrimitive(String),

    #[error("letter {0:?} does not occur in the subscript word")]
    MissingLetter(char),

    #[error("cannot decompose {word} into return words to {factor}")]
    Decomposition { word: String, factor: String },

    #[error("empty word not allowed here")]
    EmptyWord,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
