use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty chart: {0} point(s) inside the x range, at least 2 required")]
    EmptyChart(usize),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("invalid chart spec: {0}")]
    InvalidSpec(String),
    #[error("invalid range: start {start} must be before end {end}")]
    InvalidRange { start: usize, end: usize },
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse { row: usize, column: usize, message: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("too many points: {count} (limit {limit})")]
    TooLarge { count: usize, limit: usize },
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error("word vectors line {line}: {message}")]
    Vectors { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }
}
