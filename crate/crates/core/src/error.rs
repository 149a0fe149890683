use std::path::PathBuf;

use thiserror::Error;

use crate::units::Unit;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unit mismatch: expected {expected}, found {found}")]
    UnitMismatch { expected: Unit, found: Unit },

    #[error("no arithmetic rule combines {left} with {right}")]
    IncompatibleUnits { left: Unit, right: Unit },

    #[error("unknown unit token `{0}`")]
    UnknownUnit(String),

    #[error("year {year} outside series coverage [{first}, {last}]")]
    OutOfRange { year: i32, first: i32, last: i32 },

    #[error("series has a gap: year {missing} is missing")]
    Gap { missing: i32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid series: {0}")]
    Validation(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("forecast overflows the representable range at year {year}")]
    HorizonOverflow { year: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
