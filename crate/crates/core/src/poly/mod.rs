//! Polynomial algebra over [`FieldElement`](crate::exact::FieldElement):
//! dense univariate and sparse multivariate polynomials, Sturm root counting,
//! and Möbius restriction to boxes.

mod interval;
mod mobius;
mod multi;
mod sturm;
mod uni;

pub use interval::{BoxQ, IntervalQ};
pub use mobius::{
    coefficient_sign_test, mobius_coefficient, mobius_coefficients, mobius_restrict, oriented_ends, SignTest,
};
pub use multi::{Exponent, MultiPoly};
pub use sturm::{count_roots, count_roots_deflating, isolate_root, rational_between, sign_variations, sturm_sequence, Deflated};
pub use uni::UniPoly;

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("interval endpoint {endpoint} is a root")]
    EndpointIsRoot { endpoint: String },
    #[error("expected exactly one root, found {count}")]
    NoUniqueRoot { count: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division is not exact")]
    InexactDivision,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("interval endpoints out of order: {lo} > {hi}")]
    BadInterval { lo: String, hi: String },
}
