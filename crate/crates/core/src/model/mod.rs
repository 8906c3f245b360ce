//! Symbolic central-configuration matrices for nested polyhedra and the
//! radical-expression ring their entries live in.

mod config;
mod curve;
mod decompose;
mod laurent;
mod lift;
mod radical;
mod ratfunc;
mod reparam;
mod smatrix;

pub use config::{nested_polyhedron, Configuration, PolyhedronKind, Position, CUBE_IRREP_ORDER};
pub use curve::{component_box, curve_box, CurveComponent};
pub use decompose::{decompose, Decomposition, NamedBlock, ParamMatrix};
pub use laurent::{laurent_lead, LaurentLead, Side};
pub use lift::{lift, Cleared, Lift, LiftStyle};
pub use radical::{Mask, ParamEntry, RadicalExpr};
pub use ratfunc::{Factor, Quadratic, RatFunc};
pub use reparam::{reparametrize, Reparam};
pub use smatrix::{build_s, check_symmetry, Atom, Kernel, LinComb, SMatrix};

use thiserror::Error;

use crate::exact::ExactError;
use crate::group::GroupError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("two bodies coincide for all t")]
    CoincidentPositions,
    #[error("positions are not permuted by generator {generator}")]
    NotInvariant { generator: usize },
    #[error("symmetry identity fails for generator {generator} at entry ({row}, {col})")]
    SymmetryViolated { generator: usize, row: usize, col: usize },
    #[error("expression has a pole at t = {0}")]
    Pole(String),
    #[error("expression involves more than one radical: {0}")]
    NotSingleRadical(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}
