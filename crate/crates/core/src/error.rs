use thiserror::Error;

/// Errors surfaced by the closed-form and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the valid range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("size limit exceeded: {0}")]
    Size(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid matrix: {0}")]
    Matrix(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, range: &'static str) -> Self {
        Error::Domain { name, value, range }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
