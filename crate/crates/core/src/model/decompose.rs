use serde::{Deserialize, Serialize};

use super::{build_s, check_symmetry, Configuration, LinComb, ModelError, ParamEntry, SMatrix};
use crate::group::{block_decompose, multiplicities, symmetry_adapted_basis, BlockStructure, EntryMatrix, SymAdaptedBasis};

/// Matrix of [`ParamEntry`] values, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ParamEntry>,
}

impl ParamMatrix {
    pub fn from_entries(m: &EntryMatrix<LinComb>) -> Self {
        ParamMatrix { rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(LinComb::to_param).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<ParamEntry>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        ParamMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamEntry {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[ParamEntry] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }
}

/// Block `t_j` of the reduced central-configuration matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedBlock {
    pub name: String,
    pub irrep: usize,
    pub irrep_name: String,
    pub rows: usize,
    pub cols: usize,
    pub copies: usize,
    pub matrix: ParamMatrix,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub s: SMatrix,
    pub theta_multiplicities: Vec<usize>,
    pub theta_rho_multiplicities: Vec<usize>,
    pub domain: SymAdaptedBasis,
    pub codomain: SymAdaptedBasis,
    pub structure: BlockStructure<LinComb>,
    pub blocks: Vec<NamedBlock>,
}

impl Decomposition {
    pub fn block(&self, name: &str) -> Option<&NamedBlock> {
        self.blocks.iter().find(|b| b.name == name)
    }
}

/// Builds `S`, checks its symmetry and splits it into blocks.
pub fn decompose(config: &Configuration) -> Result<Decomposition, ModelError> {
    let s = build_s(config)?;
    check_symmetry(&s, config)?;
    let theta = config.theta()?;
    let theta_rho = theta.tensor(&config.rho()?)?;
    let irreps = config.data.irrep_reps();
    let theta_multiplicities = multiplicities(&theta, &irreps)?;
    let theta_rho_multiplicities = multiplicities(&theta_rho, &irreps)?;
    let (domain, codomain) =
        rayon::join(|| symmetry_adapted_basis(&theta, &irreps), || symmetry_adapted_basis(&theta_rho, &irreps));
    let (domain, codomain) = (domain?, codomain?);
    let structure = block_decompose(&s, &domain, &codomain, &theta, &theta_rho)?;
    let blocks = structure
        .blocks
        .iter()
        .map(|b| NamedBlock {
            name: config.block_name(b.irrep),
            irrep: b.irrep,
            irrep_name: config.irreps()[b.irrep].name.clone(),
            rows: b.rows,
            cols: b.cols,
            copies: b.copies,
            matrix: ParamMatrix::from_entries(&b.entries),
        })
        .collect();
    Ok(Decomposition { s, theta_multiplicities, theta_rho_multiplicities, domain, codomain, structure, blocks })
}
