//! Exact arithmetic in multi-quadratic extensions of the rationals.
//!
//! Elements are stored over the canonical basis `i^e * sqrt(m)` with `m`
//! square-free, so equality is coordinate comparison and zero is the empty
//! map. Real elements get certified signs by interval refinement.

mod ball;
mod field;
mod monomial;
mod parse;
mod rational;
mod tower;

pub use ball::Ball;
pub use field::{FieldElement, Sign};
pub use monomial::{coprime_base, square_free_split, Monomial};
pub use rational::{ceil_decimal, floor_decimal, parse_rational, rat, rat_int, rational_str, Rational};
pub use tower::{Adjunction, FieldTower};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("sign requested for a non-real element: {0}")]
    NotReal(String),
    #[error("sign undecided at maximum precision for {0}")]
    Undecided(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not rational: {0}")]
    NotRational(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
