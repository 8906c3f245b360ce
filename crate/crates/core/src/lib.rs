//! Exact symmetry reduction of central-configuration equations for nested
//! polyhedra, with certified sign analysis of the resulting blocks.

pub mod certify;
pub mod exact;
pub mod group;
pub mod model;
pub mod poly;
