use thiserror::Error;

/// Errors raised while reading sequence, episode, and report files.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: missing `# length=N` header")]
    MissingLength { line: usize },
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: timestamp {timestamp} outside 1..={length}")]
    TimestampOutOfRange {
        line: usize,
        timestamp: usize,
        length: usize,
    },
    #[error(
        "line {line}: timestamp {timestamp} is not greater than previous timestamp {previous}"
    )]
    NonIncreasing {
        line: usize,
        timestamp: usize,
        previous: usize,
    },
    #[error("line {line}: duplicate timestamp {timestamp}")]
    DuplicateTimestamp { line: usize, timestamp: usize },
    #[error("line {line}: invalid event label {label:?}")]
    InvalidLabel { line: usize, label: String },
}

/// Errors from the domain operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EdpError {
    #[error("unknown event id {0}")]
    UnknownEvent(u32),
    #[error("unknown event label {0:?}")]
    UnknownLabel(String),
    #[error("invalid event label {0:?}")]
    InvalidLabel(String),
    #[error("event {0:?} is not part of the episode alphabet")]
    NotInEpisode(String),
    #[error("prefix length {j} out of range 0..={k}")]
    PrefixOutOfRange { j: usize, k: usize },
    #[error("automaton is already in the sink state")]
    TransitionFromSink,
    #[error("episode must contain at least one event")]
    EmptyEpisode,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = EdpError> = std::result::Result<T, E>;
