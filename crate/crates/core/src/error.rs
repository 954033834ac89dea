use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i128, m: i64 },

    #[error("lens parameters not coprime to p: p={p}, params={params:?}")]
    LensNotCoprime { p: i64, params: [i64; 4] },

    #[error("lens parameter sum parity violated: params={params:?} sum to an odd number")]
    ParityViolated { params: [i64; 4] },

    #[error("precision exhausted certifying lens sums for p={p} at {bits} bits")]
    PrecisionExhausted { p: i64, bits: usize },

    #[error("k and l must have equal sums: k={k:?}, l={l:?}")]
    UnequalSums { k: [i64; 3], l: [i64; 3] },

    #[error("action is not free for k={k:?}, l={l:?}")]
    NotFree { k: [i64; 3], l: [i64; 3] },

    #[error("space is not positively curved: k={k:?}, l={l:?}")]
    NotPositivelyCurved { k: [i64; 3], l: [i64; 3] },

    #[error("invalid 3-Sasakian triple ({a}, {b}, {c}): need a > b > c > 0, pairwise coprime")]
    InvalidSasakian { a: i64, b: i64, c: i64 },

    #[error("r(k,l) = 0 for k={k:?}, l={l:?}")]
    ZeroOrder { k: [i64; 3], l: [i64; 3] },

    #[error("order must be odd and positive, got {0}")]
    EvenOrder(i64),

    #[error("invalid range [{min}, {max}]")]
    InvalidRange { min: i64, max: i64 },

    #[error("condition (C) fails for {line} of k={k:?}, l={l:?}")]
    ConditionCFails {
        k: [i64; 3],
        l: [i64; 3],
        line: String,
    },

    #[error("thread count must be at least 1")]
    ZeroThreads,

    #[error("unknown table id {0:?}")]
    UnknownTable(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed checkpoint shard: {msg}")]
    BadShard { path: PathBuf, msg: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
