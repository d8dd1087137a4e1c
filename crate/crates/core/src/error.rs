use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a proper ideal")]
    NotProper,

    #[error("ideal is not square-free: {0}")]
    NotSquareFree(String),

    #[error("invalid variable x{base}^({copy}): base and copy must be positive")]
    InvalidVar { base: u32, copy: u32 },

    #[error("malformed partition family: {0}")]
    MalformedPartition(String),

    #[error("ideal does not encode a partition family: {0}")]
    NotPartitionIdeal(String),

    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("invalid triangle choice: {0}")]
    InvalidChoice(String),

    #[error("{what} = {value} outside supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("vertex labels do not match the ideal generators: {0}")]
    LabelMismatch(String),

    #[error("malformed cell complex: {0}")]
    MalformedComplex(String),

    #[error("too many variables ({found}); at most {max} supported")]
    TooManyVariables { found: usize, max: usize },

    #[error("malformed json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: usize, min: usize, max: usize) -> Self {
        Error::OutOfRange {
            what,
            value,
            min,
            max,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
