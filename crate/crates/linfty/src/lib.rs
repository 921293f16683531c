//! L-infinity machinery over the exact kernel: Koszul signs, unshuffles and the quadratic
//! relations, the observables, Getzler and twisted `E^0` bracket families, Lie-2 morphisms
//! and strict isomorphisms.

pub mod e0;
pub mod element;
pub mod family;
pub mod getzler;
pub mod iso;
pub mod morphism;
pub mod observables;
pub mod sampling;
pub mod signs;

pub use element::{GradedElem, Payload};
pub use family::{bracket, check_relation, MultibracketFamily};

use diracspace_core::CoreError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinftyError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("arity {n} exceeds the declared maximum {max}")]
    ArityExceeded { n: usize, max: usize },
    #[error("degree violation: {0}")]
    DegreeViolation(String),
    #[error("unverified presentation: {0}")]
    Unverified(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, LinftyError>;
