//! Brute-force model of the functions on `T*[r]T[1]M` over a coordinate patch with the
//! degree `-r` Poisson bracket, and the derived-bracket multibrackets computed inside it.

pub mod derived;
pub mod encode;
pub mod gpoly;
pub mod multibracket;

pub use gpoly::{Gen, GPoly};

use diracspace_core::CoreError;
use diracspace_linfty::LinftyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("context mismatch: (r, n) = {left:?} vs {right:?}")]
    ContextMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("degree {0} is outside the encodable range")]
    OutOfRange(i32),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("not decodable: {0}")]
    NotDecodable(String),
    #[error("arity {0} exceeds the oracle bound 5")]
    ArityBound(usize),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Linfty(#[from] LinftyError),
}

pub type Result<T> = std::result::Result<T, OracleError>;
