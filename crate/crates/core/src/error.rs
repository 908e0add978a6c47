use thiserror::Error;

use crate::braid::BraidError;
use crate::covering::CoveringError;
use crate::elliptic::EllipticError;
use crate::syllables::InvalidConstants;
use crate::word::{ParseError, WordError};

/// Any failure surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Constants(#[from] InvalidConstants),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}
