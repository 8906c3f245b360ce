//! Certificates for signs, kernels and thresholds of the reduced blocks.

mod covering;
mod delta;
mod det;
mod file;
mod kernel;
mod sign;

pub use covering::{
    bisect, certify_partition, cover_sign, covering_sign, open_unit, recheck, tiles, CoveringPiece, CurvePolynomial,
};
pub use delta::{
    decimal_enclosure, find_delta, mass_ratio_at, principal_block, threshold_numerator, Delta, MassRatio, Uniqueness,
};
pub use det::{affine_parts, det_affine, minor, minors};
pub use file::{Certificate, CertificateFile};
pub use kernel::{kernel_resolvent, kernel_trivial_rect, KernelCertificate, KernelStrategy};
pub use sign::{
    certify_sign, certify_sign_on_curve, certify_sign_univariate, sign_at, sturm_data, CertifyOptions, Evidence, SignCertificate,
};

use thiserror::Error;

use crate::exact::{ExactError, Sign};
use crate::model::ModelError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("determinant is not affine in c")]
    NotAffine,
    #[error("no sign certificate within the depth limit on {interval}")]
    DepthExceeded { interval: String },
    #[error("expression is identically zero")]
    IdenticallyZero,
    #[error("{count} root(s) inside the interval")]
    RootFound { count: usize },
    #[error("expected sign {expected:?}, found {found:?}")]
    SignMismatch { expected: Sign, found: Sign },
    #[error("no kernel certificate for {block}; tried: {}", tried.join("; "))]
    StrategyExhausted { block: String, tried: Vec<String> },
    #[error("mass ratio undefined at t = {0}: first entry vanishes")]
    DenominatorZero(String),
    #[error("certificate io: {0}")]
    Io(String),
    #[error("replay failed: {0}")]
    Replay(String),
}
