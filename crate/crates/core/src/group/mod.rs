//! Finite groups, representations and symmetry-adapted bases.

mod basis;
mod blocks;
mod data;
mod finite;
mod matrix;
mod rep;

pub use basis::{
    multiplicities, reorder_for_equivariant, symmetry_adapted_basis, BasisOrdering, ColumnLabel, IsotypicPart,
    SymAdaptedBasis,
};
pub use blocks::{block_decompose, check_equivariance, Block, BlockEntry, BlockStructure, EntryMatrix};
pub use data::{GroupData, GroupFile, Irrep, IrrepFile};
pub use finite::FiniteGroup;
pub use matrix::Matrix;
pub use rep::{char_inner_product, Character, GroupRep};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("could not read group data: {0}")]
    Io(String),
    #[error("image of P_11 for irrep {irrep} has rank {rank}, expected multiplicity {multiplicity}")]
    DegenerateImage { irrep: usize, rank: usize, multiplicity: usize },
    #[error("equivariance fails for generator {generator} at entry ({row}, {col})")]
    NotEquivariant { generator: usize, row: usize, col: usize },
    #[error("entry ({row}, {col}) lies in a forbidden block but is nonzero")]
    NonzeroForbiddenBlock { row: usize, col: usize },
    #[error("copy {copy} of the block for irrep {irrep} differs from the first")]
    UnequalCopies { irrep: usize, copy: usize },
    #[error("transformed entry ({row}, {col}) is not real")]
    NotReal { row: usize, col: usize },
}
