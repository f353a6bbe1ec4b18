use thiserror::Error;

/// Errors produced by the sequence, operator, norm and suite APIs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("sequence length must be at least {min}, got {len}")]
    Length { len: usize, min: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("parameter {name} = {value} outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("eigenvector entry at index {index} exceeds the overflow guard")]
    Overflow { index: usize },

    #[error("operator {op} is not bounded on space {space}")]
    Incompatible { op: String, space: String },

    #[error("invalid weight: {0}")]
    Weight(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_unit_interval(name: &'static str, t: f64, allow_one: bool) -> Result<()> {
    let ok = if allow_one {
        (0.0..=1.0).contains(&t)
    } else {
        (0.0..1.0).contains(&t)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: t,
            expected: if allow_one { "[0, 1]" } else { "[0, 1)" },
        })
    }
}
