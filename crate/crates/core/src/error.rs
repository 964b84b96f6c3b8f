use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("letters {index} and {next} do not compose: source {source_vertex} vs target {target_vertex}")]
    NotComposable { index: usize, next: usize, source_vertex: u8, target_vertex: u8 },
    #[error("`{0}` is not a valid string")]
    InvalidString(String),
    #[error("`{0}` is not a valid band")]
    InvalidBand(String),
    #[error("word `{0}` is not closed")]
    NotClosed(String),
    #[error("{0} is not a prime >= 5")]
    InvalidPrime(u64),
    #[error("invalid band parameter: {0}")]
    InvalidParameter(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("malformed module spec `{0}`")]
    ModuleSpec(String),
    #[error("invalid type-0 word `{0}`")]
    Type0(String),
    #[error("extension class is trivial")]
    TrivialClass,
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
