use rayon::prelude::*;

use super::{reorder_for_equivariant, GroupError, GroupRep, Matrix, SymAdaptedBasis};
use crate::exact::FieldElement;

/// Entries that form a vector space over [`FieldElement`] with an exact zero test.
pub trait BlockEntry: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, s: &FieldElement, other: &Self);
    fn is_real(&self) -> bool;
}

impl BlockEntry for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add_scaled(&mut self, s: &FieldElement, other: &Self) {
        *self = &*self + &(s * other);
    }
    fn is_real(&self) -> bool {
        FieldElement::is_real(self)
    }
}

/// Row-major matrix of [`BlockEntry`] values.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: BlockEntry> EntryMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        EntryMatrix { rows, cols, data: vec![E::zero(); rows * cols] }
    }

    pub fn from_fn<F: Fn(usize, usize) -> E>(rows: usize, cols: usize, f: F) -> Self {
        let data = (0..rows * cols).map(|x| f(x / cols, x % cols)).collect();
        EntryMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    /// `self * m` for a numeric matrix `m`.
    pub fn mul_right(&self, m: &Matrix) -> Self {
        assert_eq!(self.cols, m.rows(), "shape");
        let data = (0..self.rows * m.cols())
            .into_par_iter()
            .map(|x| {
                let (i, j) = (x / m.cols(), x % m.cols());
                let mut acc = E::zero();
                for k in 0..self.cols {
                    let s = m.get(k, j);
                    if !s.is_zero() && !self.get(i, k).is_zero() {
                        acc.add_scaled(s, self.get(i, k));
                    }
                }
                acc
            })
            .collect();
        EntryMatrix { rows: self.rows, cols: m.cols(), data }
    }

    /// `m * self` for a numeric matrix `m`.
    pub fn mul_left(&self, m: &Matrix) -> Self {
        assert_eq!(m.cols(), self.rows, "shape");
        let data = (0..m.rows() * self.cols)
            .into_par_iter()
            .map(|x| {
                let (i, j) = (x / self.cols, x % self.cols);
                let mut acc = E::zero();
                for k in 0..self.rows {
                    let s = m.get(i, k);
                    if !s.is_zero() && !self.get(k, j).is_zero() {
                        acc.add_scaled(s, self.get(k, j));
                    }
                }
                acc
            })
            .collect();
        EntryMatrix { rows: m.rows(), cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        EntryMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j).clone())
    }

    /// First entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        self.data.iter().zip(&other.data).position(|(a, b)| a != b).map(|x| (x / self.cols, x % self.cols))
    }
}

/// One representative block `t_j` of an equivariant map in symmetry-adapted coordinates.
#[derive(Clone, Debug)]
pub struct Block<E> {
    pub irrep: usize,
    /// Multiplicity of irrep `j` in the codomain.
    pub rows: usize,
    /// Multiplicity of irrep `j` in the domain.
    pub cols: usize,
    /// Number of identical copies, equal to the irrep degree.
    pub copies: usize,
    pub entries: EntryMatrix<E>,
}

#[derive(Clone, Debug)]
pub struct BlockStructure<E> {
    pub domain: Matrix,
    pub codomain: Matrix,
    pub transformed: EntryMatrix<E>,
    pub blocks: Vec<Block<E>>,
    pub forbidden_zero: bool,
    pub copies_equal: bool,
    pub real: bool,
}

/// Checks `M theta(g) = rep_out(g) M` on the generators.
pub fn check_equivariance<E: BlockEntry>(
    m: &EntryMatrix<E>,
    rep_in: &GroupRep,
    rep_out: &GroupRep,
) -> Result<(), GroupError> {
    for (k, (a, b)) in rep_in.generator_matrices().into_iter().zip(rep_out.generator_matrices()).enumerate() {
        let lhs = m.mul_right(a);
        let rhs = m.mul_left(b);
        if let Some((row, col)) = lhs.first_difference(&rhs) {
            return Err(GroupError::NotEquivariant { generator: k, row, col });
        }
    }
    Ok(())
}

/// Computes `Q^-1 M P` in row-ordered symmetry-adapted bases and verifies
/// that it splits into identical copies of one block per irrep.
pub fn block_decompose<E: BlockEntry>(
    m: &EntryMatrix<E>,
    domain: &SymAdaptedBasis,
    codomain: &SymAdaptedBasis,
    rep_in: &GroupRep,
    rep_out: &GroupRep,
) -> Result<BlockStructure<E>, GroupError> {
    if domain.parts.len() != codomain.parts.len() {
        return Err(GroupError::Shape("domain and codomain bases use different irrep lists".into()));
    }
    check_equivariance(m, rep_in, rep_out)?;
    let dom = reorder_for_equivariant(domain);
    let cod = reorder_for_equivariant(codomain);
    let p = dom.matrix();
    let q = cod.matrix();
    let q_inv = q.inverse()?;
    let t = m.mul_right(&p).mul_left(&q_inv);

    let row_labels = cod.labels();
    let col_labels = dom.labels();
    for (i, rl) in row_labels.iter().enumerate() {
        for (j, cl) in col_labels.iter().enumerate() {
            let allowed = rl.irrep == cl.irrep && rl.row == cl.row;
            if !allowed && !t.get(i, j).is_zero() {
                return Err(GroupError::NonzeroForbiddenBlock { row: i, col: j });
            }
            if !t.get(i, j).is_real() {
                return Err(GroupError::NotReal { row: i, col: j });
            }
        }
    }

    let mut blocks = Vec::new();
    for (dp, cp) in dom.parts.iter().zip(&cod.parts) {
        let (r, c, n) = (cp.multiplicity, dp.multiplicity, dp.degree);
        if r == 0 || c == 0 {
            continue;
        }
        let r0 = cod.span_of(cp.irrep).start;
        let c0 = dom.span_of(dp.irrep).start;
        let first = t.submatrix(r0..r0 + r, c0..c0 + c);
        for k in 1..n {
            let copy = t.submatrix(r0 + k * r..r0 + (k + 1) * r, c0 + k * c..c0 + (k + 1) * c);
            if copy != first {
                return Err(GroupError::UnequalCopies { irrep: dp.irrep, copy: k });
            }
        }
        blocks.push(Block { irrep: dp.irrep, rows: r, cols: c, copies: n, entries: first });
    }
    Ok(BlockStructure {
        domain: p,
        codomain: q,
        transformed: t,
        blocks,
        forbidden_zero: true,
        copies_equal: true,
        real: true,
    })
}
