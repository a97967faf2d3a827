use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("braid must have at least one strand")]
    NoStrands,

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("full twist needs at least 2 strands, got {0}")]
    FullTwistTooSmall(usize),

    #[error("word is not positive")]
    NotPositive,

    #[error("closure has {0} components, expected a knot")]
    NotAKnot(usize),

    #[error("cannot destabilize: {0}")]
    Destabilize(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid T-link: {0}")]
    InvalidTLink(String),

    #[error("invalid torus sub-braid: {0}")]
    InvalidTorusBraid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("crossing cap exceeded: {crossings} > {cap}")]
    CrossingCap { crossings: usize, cap: usize },

    #[error("invalid satellite: {0}")]
    InvalidSatellite(String),

    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
