use thiserror::Error;

use crate::antimatroid::AntimatroidReport;
use crate::dsc::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("validation failed:\n{0}")]
    Invalid(ValidationReport),
    #[error("not an antimatroid:\n{0}")]
    InvalidAntimatroid(AntimatroidReport),
    #[error("not a partial order: {0}")]
    NotAPoset(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unresolved requirement: {0}")]
    Resolution(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn cap(what: &'static str, size: usize, cap: usize) -> Self {
        Error::SizeCap { what, size, cap }
    }
}
