use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("not a p-group (order {order})")]
    NotPGroup { order: u128 },

    #[error("order {0} is not a prime power")]
    NotPrimePower(u128),

    #[error("the pair does not generate the group")]
    NotGeneratingPair,

    #[error("the group is not 2-generated")]
    NotTwoGenerated,

    #[error("element is not a member of the group")]
    NotMember,

    #[error("origamis are realized over different groups")]
    DifferentRealizations,

    #[error("invalid twist: {0}")]
    InvalidTwist(String),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("{a} is not coprime to {modulus}")]
    NotCoprime { a: i64, modulus: u64 },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for errors caused by a size or resource limit.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
