use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::exact::FieldElement;

/// Dense row-major matrix over [`FieldElement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, GroupError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(GroupError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(rows: usize, cols: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Permutation matrix sending basis vector `e_x` to `e_{p(x)}`.
    pub fn permutation(p: &[usize]) -> Self {
        let mut m = Self::zeros(p.len(), p.len());
        for (x, &y) in p.iter().enumerate() {
            m.set(y, x, FieldElement::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(FieldElement::is_real)
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self += s * other`, skipping zero entries of `other`.
    pub fn add_scaled(&mut self, s: &FieldElement, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "shape");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn kron(&self, other: &Matrix) -> Self {
        let mut k = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        let b = other.get(p, q);
                        if !b.is_zero() {
                            k.set(i * other.rows + p, j * other.cols + q, a * b);
                        }
                    }
                }
            }
        }
        k
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Lexicographically first maximal set of linearly independent columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn inverse(&self) -> Result<Matrix, GroupError> {
        if !self.is_square() {
            return Err(GroupError::Shape(format!("{}x{} matrix has no inverse", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElement::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(GroupError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn hstack(blocks: &[&Matrix]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "shape");
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Smallest positive `s` with `self == s * other`, if the two are positively proportional.
    pub fn positive_ratio(&self, other: &Matrix) -> Option<FieldElement> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let (a, b) = self.data.iter().zip(&other.data).find(|(_, b)| !b.is_zero())?;
        let s = a.checked_div(b).ok()?;
        if s.sign().ok()? != crate::exact::Sign::Positive {
            return None;
        }
        (*self == other.scale(&s)).then_some(s)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let x = out.get(i, j) + &(a * b);
                        out.set(i, j, x);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&FieldElement::one(), rhs);
        out
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&FieldElement::from_int(-1), rhs);
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&FieldElement::from_int(-1))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
