use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("frame mismatch: {0}")]
    FrameMismatch(String),

    #[error("not combinable: {0}")]
    NotCombinable(String),

    #[error("product space has {cardinality} elements, cap is {cap}")]
    ProductTooLarge { cardinality: u128, cap: u128 },

    #[error("conditioning on a null set: {0}")]
    NullConditioning(String),

    #[error("bad index or element: {0}")]
    BadIndex(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("generator exhausted after {retries} retries (trial {trial})")]
    GeneratorExhausted { trial: u64, retries: u32 },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotCombinable(_) => 2,
            _ => 1,
        }
    }
}
