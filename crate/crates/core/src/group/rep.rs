use std::sync::Arc;

use rayon::prelude::*;

use super::{FiniteGroup, GroupError, Matrix};
use crate::exact::{rat, FieldElement};

/// Linear representation given by one matrix per group element.
#[derive(Clone, Debug)]
pub struct GroupRep {
    group: Arc<FiniteGroup>,
    degree: usize,
    matrices: Vec<Matrix>,
}

/// Class function, stored by conjugacy class index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<FieldElement>,
}

impl GroupRep {
    /// Extends generator images along the group's words and checks the
    /// homomorphism property on every edge of the Cayley graph.
    pub fn from_generator_images(group: Arc<FiniteGroup>, images: Vec<Matrix>) -> Result<Self, GroupError> {
        if images.len() != group.generators().len() {
            return Err(GroupError::Validation(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        let degree = images.first().map_or(0, Matrix::rows);
        if let Some(bad) = images.iter().position(|m| m.rows() != degree || m.cols() != degree) {
            return Err(GroupError::Shape(format!("image of generator {bad} is not {degree}x{degree}")));
        }
        let matrices: Vec<Matrix> = (0..group.order())
            .map(|g| group.word(g).iter().fold(Matrix::identity(degree), |acc, &s| &acc * &images[s]))
            .collect();
        let rep = GroupRep { group, degree, matrices };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    /// Permutation representation of the group's own action on points.
    pub fn permutation(group: Arc<FiniteGroup>) -> Self {
        let matrices = (0..group.order()).map(|g| Matrix::permutation(group.permutation(g))).collect();
        GroupRep { degree: group.degree(), group, matrices }
    }

    /// Trivial action on an `n`-dimensional space.
    pub fn identity(group: Arc<FiniteGroup>, n: usize) -> Self {
        let matrices = vec![Matrix::identity(n); group.order()];
        GroupRep { group, degree: n, matrices }
    }

    fn check_homomorphism(&self) -> Result<(), GroupError> {
        if !self.matrices[0].is_identity() {
            return Err(GroupError::Validation("identity does not map to the identity matrix".into()));
        }
        for g in 0..self.group.order() {
            for (k, &s) in self.group.generators().iter().enumerate() {
                let gs = self.group.multiply(g, s);
                if self.matrices[gs] != &self.matrices[g] * &self.matrices[s] {
                    return Err(GroupError::Validation(format!(
                        "homomorphism fails: rep({}) * rep(generator {k}) != rep(product)",
                        g
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn generator_matrices(&self) -> Vec<&Matrix> {
        self.group.generators().iter().map(|&g| &self.matrices[g]).collect()
    }

    pub fn character(&self) -> Character {
        Character { values: self.group.classes().iter().map(|c| self.matrices[c[0]].trace()).collect() }
    }

    /// Kronecker product representation `g -> a(g) (x) b(g)`.
    pub fn tensor(&self, other: &GroupRep) -> Result<GroupRep, GroupError> {
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(GroupError::Validation("tensor of representations of different groups".into()));
        }
        let matrices = self.matrices.par_iter().zip(&other.matrices).map(|(a, b)| a.kron(b)).collect();
        Ok(GroupRep { group: self.group.clone(), degree: self.degree * other.degree, matrices })
    }

    /// `sum_g w(g) rep(g)` for element weights `w`.
    fn weighted_sum<F: Fn(usize) -> FieldElement>(&self, w: F) -> Matrix {
        let mut acc = Matrix::zeros(self.degree, self.degree);
        for g in 0..self.group.order() {
            acc.add_scaled(&w(g), &self.matrices[g]);
        }
        acc
    }

    /// Idempotent projector `(n_j/|G|) sum_g chi_j(g^-1) rep(g)` onto the isotypic component of `irrep`.
    pub fn isotypic_projection(&self, irrep: &GroupRep) -> Matrix {
        let chi = irrep.character();
        let s = FieldElement::from(rat(irrep.degree as i64, self.group.order() as i64));
        self.weighted_sum(|g| chi.at(&self.group, self.group.inverse(g))).scale(&s)
    }

    /// Unnormalized transference `sum_g d_ki(g^-1) rep(g)` (1-based `k`, `i`).
    pub fn raw_transference(&self, irrep: &GroupRep, k: usize, i: usize) -> Matrix {
        assert!(k >= 1 && i >= 1 && k <= irrep.degree && i <= irrep.degree, "transference index");
        self.weighted_sum(|g| irrep.matrix(self.group.inverse(g)).get(k - 1, i - 1).clone())
    }

    /// Transference `(n_j/|G|) sum_g d_ki(g^-1) rep(g)` (1-based `k`, `i`).
    pub fn transference(&self, irrep: &GroupRep, k: usize, i: usize) -> Matrix {
        let s = FieldElement::from(rat(irrep.degree as i64, self.group.order() as i64));
        self.raw_transference(irrep, k, i).scale(&s)
    }
}

impl Character {
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn at(&self, group: &FiniteGroup, g: usize) -> FieldElement {
        self.values[group.class_of(g)].clone()
    }
}

/// `(1/|G|) sum_g a(g^-1) b(g)`.
pub fn char_inner_product(group: &FiniteGroup, a: &Character, b: &Character) -> FieldElement {
    let total: FieldElement = group
        .classes()
        .iter()
        .map(|c| {
            let size = FieldElement::from_int(c.len() as i64);
            &(&size * &a.at(group, group.inverse(c[0]))) * &b.at(group, c[0])
        })
        .sum();
    total.scale(&rat(1, group.order() as i64))
}
