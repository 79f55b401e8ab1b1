use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("set is not inverse-closed")]
    NotInverseClosed,
    #[error("Dic base group is not abelian")]
    DicNotAbelian,
    #[error("Dic base group has odd order {0}")]
    DicOddOrder(usize),
    #[error("Dic base group has exponent <= 2")]
    DicExponentTooSmall,
    #[error("Dic parameter y = {0} is not an involution")]
    DicNotInvolution(usize),
    #[error("Dic base group has {0} involutions; pass y explicitly")]
    DicAmbiguousInvolution(usize),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not a group homomorphism")]
    NotHomomorphism,
    #[error("budget exceeded: {what} = {value} > {limit}")]
    Budget {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn budget(what: &'static str, value: impl TryInto<u64>, limit: impl TryInto<u64>) -> Self {
        Error::Budget {
            what,
            value: value.try_into().unwrap_or(u64::MAX),
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }

    /// Usage and budget problems map to exit code 2.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
