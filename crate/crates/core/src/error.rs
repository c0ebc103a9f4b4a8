use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed ONF document or bracketed tree.
    #[error("ONF parse error{}: {message}", sentence_ctx(.sentence))]
    Onf {
        sentence: Option<usize>,
        message: String,
    },

    /// A tree query asked for a token or ancestor that does not exist.
    #[error("range error: {0}")]
    Range(String),

    /// Bible TSV or book-code mapping problem.
    #[error("ingestion error at line {line}: {message}")]
    Ingest { line: usize, message: String },

    #[error("invalid verse label {input:?}: {message}")]
    VerseLabel { input: String, message: String },

    #[error("alignment error: {0}")]
    Alignment(String),

    #[error("CoNLL-U parse error at line {line}: {message}")]
    Conllu { line: usize, message: String },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// The target translation overlaps the source corpus in too few verses.
    #[error("translation covers {overlap} source verses, below the minimum of {minimum}")]
    Coverage { overlap: usize, minimum: usize },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", .path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    /// Wraps an error with the file it came from.
    #[error("{}: {source}", .path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
}

fn sentence_ctx(sentence: &Option<usize>) -> String {
    match sentence {
        Some(i) => format!(" in sentence {i}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn onf(sentence: Option<usize>, message: impl Into<String>) -> Self {
        Error::Onf {
            sentence,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
