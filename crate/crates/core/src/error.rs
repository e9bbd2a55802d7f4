use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rejected input: {0}")]
    InvalidInput(String),

    #[error("incompatible quadratic fields: √{0} vs √{1}")]
    IncompatibleField(String, String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),

    #[error("singular basepoint: {0}")]
    SingularBasepoint(String),

    #[error("degenerate argument: {0}")]
    DegenerateArgument(String),

    #[error("degenerate identity: {0}")]
    DegenerateIdentity(String),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("invalid prime {0}: {1}")]
    InvalidPrime(u64, String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown formula `{0}`")]
    UnknownFormula(String),

    #[error("unknown transform `{0}`")]
    UnknownTransform(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
