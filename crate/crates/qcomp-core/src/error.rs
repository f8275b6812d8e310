//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid caller input (bad arguments, malformed files, duplicate ids).
    #[error("input error: {0}")]
    Input(String),

    /// A generation or embedding backend failed; carries its diagnostic.
    #[error("backend error: {0}")]
    Backend(String),

    /// The backend answered but produced nothing usable.
    #[error("generation produced no usable output: {0}")]
    EmptyGeneration(String),

    /// Backend output could not be parsed; the raw output is preserved.
    #[error("unparseable backend output: {reason}")]
    Format {
        reason: String,
        /// Raw backend output, kept verbatim for inspection.
        raw: String,
    },

    /// A rendered card exceeds the hard serialization bound.
    #[error("card is {size} bytes after truncation, above the {limit}-byte bound; card limit is misconfigured")]
    CardOverflow { size: usize, limit: usize },

    /// Filesystem failure while persisting or loading artifacts.
    #[error("storage error: {context}: {source}")]
    Storage {
        context: String,
        #[source]
        source: std::io::Error,
    },

    /// A backend violated its declared contract (e.g. wrong dimension).
    #[error("backend contract violation: {0}")]
    Contract(String),

    /// Operation invoked against missing or inconsistent state.
    #[error("invalid state: {0}")]
    State(String),

    /// An error attributed to a specific document during pipeline work.
    #[error("document '{doc_id}': {source}")]
    Doc {
        doc_id: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an I/O error with a short description of what was being done.
    pub fn storage(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Storage {
            context: context.into(),
            source,
        }
    }

    /// Attaches the failing document id to an error.
    pub fn for_doc(doc_id: impl Into<String>, source: Error) -> Self {
        Error::Doc {
            doc_id: doc_id.into(),
            source: Box::new(source),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
