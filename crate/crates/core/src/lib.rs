//! Exact symbolic kernel: rational polynomials, Cartan calculus on a coordinate patch,
//! the split Courant structure on `T + ^p T*`, pointwise Lagrangian linear algebra and
//! finitely presented higher Dirac structures.

pub mod courant;
pub mod exterior;
pub mod lagrangian;
pub mod linalg;
pub mod presentations;
pub mod sample;
pub mod scalar;

pub use exterior::{Form, MultiVec, VField};
pub use scalar::{Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("context mismatch: dimension {left} vs {right}")]
    ContextMismatch { left: usize, right: usize },
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i32, found: i32 },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("tier overflow: {0}")]
    TierOverflow(String),
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("value does not extend to a form: {0}")]
    NotExtendable(String),
    #[error("dimension constraint violated: dim S = {dim_s}, n = {n}, p = {p}")]
    DimensionConstraint { dim_s: usize, n: usize, p: usize },
    #[error("verification-only mode: {0}")]
    VerificationOnly(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("form is not closed")]
    NotClosed,
    #[error("degenerate form")]
    Degenerate,
    #[error("{0}")]
    Invalid(String),
}
