use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} outside universe of size {universe}")]
    OutOfUniverse { element: usize, universe: usize },

    #[error("0 is not an element of [N]")]
    ZeroInInterval,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("universe of {size} elements exceeds the {limit}-element budget")]
    Budget { size: usize, limit: usize },

    #[error("enumeration budget of {limit} sets exceeded after {visited} visits")]
    PartialEnumeration { visited: u64, limit: u64 },

    #[error("set is not sum-free: {x} + {y} = {z}")]
    NotSumFree { x: usize, y: usize, z: usize },

    #[error("set file line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
