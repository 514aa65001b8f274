use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error("line {line}, column {column}: {source}")]
    Polynomial {
        line: usize,
        column: usize,
        source: froblab_core::Error,
    },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("bad matrix shape: {0}")]
    BadMatrixShape(String),
    #[error("{0}")]
    Engine(#[from] froblab_core::Error),
    #[error("no system of parameters found in {0} attempts")]
    SearchExhausted(usize),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IoError",
            CliError::File { .. } => "FileSyntaxError",
            CliError::Polynomial { source, .. } | CliError::Engine(source) => source.code(),
            CliError::MissingField(_) => "MissingField",
            CliError::BadMatrixShape(_) => "BadMatrixShape",
            CliError::SearchExhausted(_) => "SearchExhausted",
        }
    }
}
