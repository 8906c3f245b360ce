use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::exact::{rat_int, FieldElement, Rational};
use crate::group::{FiniteGroup, GroupData, GroupRep, Irrep, Matrix};

/// Position `constant + t * linear`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub constant: Vec<Rational>,
    pub linear: Vec<Rational>,
}

impl Position {
    pub fn fixed(v: &[i64]) -> Self {
        Position { constant: v.iter().map(|&x| rat_int(x)).collect(), linear: vec![rat_int(0); v.len()] }
    }

    pub fn scaled(v: &[i64]) -> Self {
        Position { constant: vec![rat_int(0); v.len()], linear: v.iter().map(|&x| rat_int(x)).collect() }
    }

    fn image(&self, m: &Matrix) -> Result<Position, ModelError> {
        let apply = |v: &[Rational]| -> Result<Vec<Rational>, ModelError> {
            let fv: Vec<FieldElement> = v.iter().cloned().map(FieldElement::from_rational).collect();
            m.mul_vec(&fv).iter().map(|x| x.to_rational().map_err(ModelError::from)).collect()
        };
        Ok(Position { constant: apply(&self.constant)?, linear: apply(&self.linear)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyhedronKind {
    Tetrahedron,
    Octahedron,
    Cube,
}

impl PolyhedronKind {
    pub const ALL: [PolyhedronKind; 3] = [PolyhedronKind::Tetrahedron, PolyhedronKind::Octahedron, PolyhedronKind::Cube];

    pub fn name(self) -> &'static str {
        match self {
            PolyhedronKind::Tetrahedron => "tetrahedron",
            PolyhedronKind::Octahedron => "octahedron",
            PolyhedronKind::Cube => "cube",
        }
    }
}

impl std::str::FromStr for PolyhedronKind {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        PolyhedronKind::ALL
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase())
            .ok_or_else(|| ModelError::Unsupported(format!("unknown case {s:?}")))
    }
}

/// Bodies at given positions with a finite symmetry group acting orthogonally.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub name: String,
    pub dim: usize,
    pub positions: Vec<Position>,
    pub data: GroupData,
    /// Orthogonal action of each generator.
    pub rho_generators: Vec<Matrix>,
    /// Induced permutation of the bodies for each generator.
    pub zeta: Vec<Vec<usize>>,
    /// Names of the blocks attached to irreps, by irrep index.
    pub block_names: Vec<(usize, String)>,
}

impl Configuration {
    pub fn new(
        name: &str,
        positions: Vec<Position>,
        data: GroupData,
        rho_generators: Vec<Matrix>,
        block_names: Vec<(usize, String)>,
    ) -> Result<Self, ModelError> {
        let dim = positions.first().map_or(0, |p| p.constant.len());
        let mut zeta = Vec::with_capacity(rho_generators.len());
        for (k, m) in rho_generators.iter().enumerate() {
            if !(m * &m.transpose()).is_identity() {
                return Err(ModelError::Unsupported(format!("generator {k} does not act orthogonally")));
            }
            let perm = positions
                .iter()
                .map(|p| {
                    let img = p.image(m)?;
                    positions.iter().position(|q| *q == img).ok_or(ModelError::NotInvariant { generator: k })
                })
                .collect::<Result<Vec<_>, _>>()?;
            zeta.push(perm);
        }
        let config = Configuration { name: name.to_string(), dim, positions, data, rho_generators, zeta, block_names };
        config.theta()?;
        config.rho()?;
        Ok(config)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.data.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.data.irreps
    }

    pub fn n_bodies(&self) -> usize {
        self.positions.len()
    }

    /// Permutation representation of the group on the bodies.
    pub fn theta(&self) -> Result<GroupRep, ModelError> {
        let images = self.zeta.iter().map(|p| Matrix::permutation(p)).collect();
        Ok(GroupRep::from_generator_images(self.group().clone(), images)?)
    }

    pub fn rho(&self) -> Result<GroupRep, ModelError> {
        Ok(GroupRep::from_generator_images(self.group().clone(), self.rho_generators.clone())?)
    }

    pub fn block_name(&self, irrep: usize) -> String {
        self.block_names
            .iter()
            .find(|(j, _)| *j == irrep)
            .map(|(_, n)| n.clone())
            .unwrap_or_else(|| format!("B{}", irrep + 1))
    }
}

fn outer_vertices(kind: PolyhedronKind) -> Vec<[i64; 3]> {
    match kind {
        PolyhedronKind::Tetrahedron => vec![[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]],
        PolyhedronKind::Octahedron => {
            vec![[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
        }
        PolyhedronKind::Cube => vec![
            [1, 1, 1],
            [1, 1, -1],
            [1, -1, 1],
            [-1, 1, 1],
            [1, -1, -1],
            [-1, 1, -1],
            [-1, -1, 1],
            [-1, -1, -1],
        ],
    }
}

/// Irrep order used by the cube case, as indices into the O_h data file.
pub const CUBE_IRREP_ORDER: [usize; 10] = [0, 3, 1, 2, 4, 5, 7, 8, 6, 9];

/// Two nested copies of a regular polyhedron, the inner one scaled by `t`.
pub fn nested_polyhedron(kind: PolyhedronKind) -> Configuration {
    let outer = outer_vertices(kind);
    let mut positions: Vec<Position> = outer.iter().map(|v| Position::fixed(v)).collect();
    positions.extend(outer.iter().map(|v| Position::scaled(v)));
    let (data, rho, names): (GroupData, Vec<Matrix>, &[(usize, &str)]) = match kind {
        PolyhedronKind::Tetrahedron => (
            GroupData::s4(),
            vec![
                Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
                Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
            ],
            &[(0, "T1"), (3, "t4")],
        ),
        PolyhedronKind::Octahedron | PolyhedronKind::Cube => {
            let gens = vec![
                Matrix::from_ints(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]),
                Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
                Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            ];
            if kind == PolyhedronKind::Octahedron {
                (GroupData::oh(), gens, &[(0, "O1"), (4, "O5"), (8, "O9")])
            } else {
                (GroupData::oh().reordered(&CUBE_IRREP_ORDER), gens, &[(0, "C1"), (1, "C2"), (6, "C7"), (7, "C8")])
            }
        }
    };
    let names = names.iter().map(|(j, n)| (*j, n.to_string())).collect();
    Configuration::new(kind.name(), positions, data, rho, names).expect("built-in configuration is consistent")
}
