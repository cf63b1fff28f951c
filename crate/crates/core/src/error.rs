use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("text is empty")]
    EmptyText,

    #[error("text has {text} bytes but {labels} labels were given")]
    LengthMismatch { text: usize, labels: usize },

    /// Position is 1-based.
    #[error("label {label} at position {position} exceeds the label bound {bound}")]
    LabelOutOfRange {
        position: usize,
        label: u64,
        bound: u64,
    },

    #[error("position {position} is outside [1, {len}]")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("range [{a}, {b}] is invalid (bound {bound})")]
    RangeOutOfBounds { a: u64, b: u64, bound: u64 },

    #[error("interval [{start}, {end}] is invalid for a text of length {len}")]
    IntervalOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("pattern must be nonempty")]
    EmptyPattern,

    #[error("text of length {0} is too long for 32-bit positions")]
    TextTooLong(usize),

    #[error("malformed index file: {0}")]
    Format(String),

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u32),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
