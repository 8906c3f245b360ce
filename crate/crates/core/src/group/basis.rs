use rayon::prelude::*;

use super::{char_inner_product, GroupError, GroupRep, Matrix};
use crate::exact::FieldElement;

/// Column order of a symmetry-adapted basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisOrdering {
    /// `v_1^i, ..., v_n^i` for each copy `i` (block-diagonalizes the representation).
    ByCopy,
    /// `v_k^1, ..., v_k^c` for each row `k` (block-diagonalizes equivariant maps).
    ByRow,
}

/// Vectors spanning the isotypic component of one irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicPart {
    pub irrep: usize,
    pub multiplicity: usize,
    pub degree: usize,
    /// `vectors[i][k]` is `v_{k+1}^{i+1}`.
    pub vectors: Vec<Vec<Vec<FieldElement>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymAdaptedBasis {
    pub dim: usize,
    pub parts: Vec<IsotypicPart>,
    pub ordering: BasisOrdering,
}

/// Position of a basis column: irrep index, row `k` and copy `i` (both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColumnLabel {
    pub irrep: usize,
    pub row: usize,
    pub copy: usize,
}

/// Multiplicity of each irrep in `rep`, from character inner products.
pub fn multiplicities(rep: &GroupRep, irreps: &[GroupRep]) -> Result<Vec<usize>, GroupError> {
    let chi = rep.character();
    irreps
        .iter()
        .enumerate()
        .map(|(j, ir)| {
            let ip = char_inner_product(rep.group(), &ir.character(), &chi);
            ip.as_rational()
                .filter(|r| r.is_integer() && !num_traits::Signed::is_negative(r))
                .and_then(|r| num_traits::ToPrimitive::to_usize(&r.to_integer()))
                .ok_or_else(|| GroupError::Validation(format!("multiplicity of irrep {j} is {ip}")))
        })
        .collect()
}

/// Symmetry-adapted basis built from transferences: `v_1^i` are the first
/// independent columns of `P^j_11` and `v_k^i = P^j_1k v_1^i`.
pub fn symmetry_adapted_basis(rep: &GroupRep, irreps: &[GroupRep]) -> Result<SymAdaptedBasis, GroupError> {
    let mult = multiplicities(rep, irreps)?;
    let parts = irreps
        .par_iter()
        .enumerate()
        .map(|(j, ir)| {
            let c = mult[j];
            let n = ir.degree();
            if c == 0 {
                return Ok(IsotypicPart { irrep: j, multiplicity: 0, degree: n, vectors: Vec::new() });
            }
            let p11 = rep.raw_transference(ir, 1, 1);
            let cols = p11.independent_columns();
            if cols.len() != c {
                return Err(GroupError::DegenerateImage { irrep: j, rank: cols.len(), multiplicity: c });
            }
            let firsts: Vec<Vec<FieldElement>> = cols.iter().map(|&col| p11.column(col)).collect();
            let transfers: Vec<Matrix> = (2..=n).map(|k| rep.raw_transference(ir, 1, k)).collect();
            let vectors = firsts
                .into_iter()
                .map(|v1| {
                    let mut rows = vec![v1.clone()];
                    rows.extend(transfers.iter().map(|t| t.mul_vec(&v1)));
                    rows
                })
                .collect();
            Ok(IsotypicPart { irrep: j, multiplicity: c, degree: n, vectors })
        })
        .collect::<Result<Vec<_>, GroupError>>()?;
    let total: usize = parts.iter().map(|p| p.multiplicity * p.degree).sum();
    if total != rep.degree() {
        return Err(GroupError::Validation(format!(
            "irreps cover dimension {total} of a degree-{} representation",
            rep.degree()
        )));
    }
    Ok(SymAdaptedBasis { dim: rep.degree(), parts, ordering: BasisOrdering::ByCopy })
}

/// Same vectors listed row by row, as needed for equivariant maps.
pub fn reorder_for_equivariant(b: &SymAdaptedBasis) -> SymAdaptedBasis {
    SymAdaptedBasis { ordering: BasisOrdering::ByRow, ..b.clone() }
}

impl SymAdaptedBasis {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.multiplicity).collect()
    }

    pub fn labels(&self) -> Vec<ColumnLabel> {
        let mut out = Vec::with_capacity(self.dim);
        for p in &self.parts {
            match self.ordering {
                BasisOrdering::ByCopy => {
                    for copy in 0..p.multiplicity {
                        for row in 0..p.degree {
                            out.push(ColumnLabel { irrep: p.irrep, row, copy });
                        }
                    }
                }
                BasisOrdering::ByRow => {
                    for row in 0..p.degree {
                        for copy in 0..p.multiplicity {
                            out.push(ColumnLabel { irrep: p.irrep, row, copy });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn vector(&self, l: ColumnLabel) -> &[FieldElement] {
        &self.parts[l.irrep].vectors[l.copy][l.row]
    }

    /// Change-of-basis matrix whose columns are the basis vectors in order.
    pub fn matrix(&self) -> Matrix {
        let cols: Vec<Vec<FieldElement>> = self.labels().into_iter().map(|l| self.vector(l).to_vec()).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Columns of the change-of-basis matrix belonging to irrep `j`.
    pub fn span_of(&self, j: usize) -> std::ops::Range<usize> {
        let start: usize = self.parts[..j].iter().map(|p| p.multiplicity * p.degree).sum();
        start..start + self.parts[j].multiplicity * self.parts[j].degree
    }
}
