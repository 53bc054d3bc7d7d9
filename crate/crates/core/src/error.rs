use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or input value is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A conditional slice of the `|Z|` distribution failed to normalize.
    #[error(
        "calibration error: slice (m={m}, k={k}, a={a}, b={b}) does not normalize (sum={sum})"
    )]
    Calibration {
        m: u64,
        k: usize,
        a: usize,
        b: usize,
        sum: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Malformed filter file or config content.
    #[error("format error: {0}")]
    Format(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the CLI: 2 for I/O failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            _ => 1,
        }
    }
}
