use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cell index {index} out of bounds for array of {len} words")]
    Bounds { index: u64, len: u64 },

    #[error("value {value} does not fit in {width} bits")]
    Overflow { value: u64, width: u32 },

    #[error("word width {0} unsupported (must be between 8 and 64)")]
    Width(u32),

    #[error("register budget exceeded: peak {peak} words over budget {budget}")]
    Budget { peak: usize, budget: usize },

    #[error("invalid edge list: {0}")]
    EdgeList(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("file format error at byte {offset}: {reason}")]
    Format { offset: u64, reason: String },

    #[error("representation error: {0}")]
    Representation(String),

    #[error("corrupted array at cell {index}: {reason}")]
    Corruption { index: u64, reason: String },

    #[error("restore violation: array digest changed after traversal")]
    RestoreViolation,

    #[error("strict mode requires every vertex to have out-degree at least 2 ({0})")]
    StrictDomain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
