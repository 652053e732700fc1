use thiserror::Error;

/// Errors raised by the toolkit. Verdict failures are values, not errors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("degree or variable mismatch: {0}")]
    Mismatch(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 3,
            _ => 2,
        }
    }

    /// Machine-readable failure tag.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Parse(_) => "parse",
            Error::Budget(_) => "budget",
            Error::Mismatch(_) => "mismatch",
            Error::FieldTooSmall(_) => "field-too-small",
            Error::Degenerate(_) => "degenerate",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
