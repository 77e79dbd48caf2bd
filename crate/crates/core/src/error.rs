use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radicand must be nonzero")]
    ZeroRadicand,

    #[error("elements belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("{0}: zero input")]
    ZeroInput(&'static str),

    #[error("degenerate coefficients: {0}")]
    Degenerate(&'static str),

    #[error("d must be nonzero")]
    ZeroD,

    #[error("field has unit rank 0; no exponent bound needed")]
    RankZero,

    #[error("denominator vanishes in {0}")]
    ZeroDenominator(&'static str),

    #[error("{0} is undefined at this point")]
    Undefined(&'static str),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid scan specification: {0}")]
    InvalidSpec(String),

    #[error("I/O failure at {key}: {source}")]
    Io {
        key: String,
        #[source]
        source: io::Error,
    },

    #[error("malformed journal entry: {0}")]
    Journal(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
