use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("malformed notation: {0}")]
    Notation(String),

    #[error("notation {notation} exceeds the configured ceiling {ceiling}")]
    Ceiling { notation: String, ceiling: String },

    #[error("{0} is not a limit ordinal")]
    NotLimit(String),

    #[error("a computable copy of 0 is empty")]
    EmptyCopy,

    #[error("index {0} is outside the represented range")]
    IndexOutOfRange(u64),

    #[error("operator contract violation: {0}")]
    Contract(String),

    #[error(
        "family is not increasing: {smaller} is not contained in {larger} (witness {witness})"
    )]
    NotIncreasing {
        smaller: String,
        larger: String,
        witness: String,
    },

    #[error("witness clause ({clause}) violated at {sigma} / {tau}")]
    WitnessClause {
        clause: &'static str,
        sigma: String,
        tau: String,
    },

    #[error("sets overlap at {0}")]
    Overlap(String),

    #[error("maximal sequence {0} is not covered")]
    Uncovered(String),

    #[error("no separator contains {0}")]
    NoSeparator(String),

    #[error("play length mismatch: {xs} moves for I, {yzs} for II")]
    PlayLength { xs: usize, yzs: usize },

    #[error("strategy undefined at {0}")]
    Undefined(String),

    #[error("y prefix of length {have} is too short, need {need}")]
    ShortPrefix { have: usize, need: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search bound exhausted: {0}")]
    BoundExhausted(String),

    #[error("invalid input: {0}")]
    Input(String),
}
