use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector has a negative coefficient on {key}")]
    NotPositive { key: String },

    #[error("antecedent has zero norm")]
    ZeroAntecedent,

    #[error("{op} requires {expected} keys, found {found}")]
    KeyVariantMismatch {
        op: &'static str,
        expected: &'static str,
        found: String,
    },

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("language is not a probability distribution (class: {0})")]
    NotDistribution(String),

    #[error("context vector of `{word}` is not spanned by candidates up to length {max_len}")]
    SpanNotReached { word: String, max_len: usize },

    #[error("vector is not in the span of the context basis (residual {residual:e})")]
    NotInSpan { residual: f64 },

    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("theta is not on the probability simplex")]
    NotSimplex,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed dataset at line {line}: {msg}")]
    MalformedDataset { line: usize, msg: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Errors caused by malformed or missing input, as opposed to errors
    /// raised by a model while scoring well-formed input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Io { .. }
                | Error::MalformedDataset { .. }
                | Error::InvalidConfig(_)
                | Error::EmptyCorpus
                | Error::UnknownWord(_)
        )
    }
}

pub(crate) fn read_to_string(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}
