use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{FieldElement, Monomial, Rational};

/// Ordered list of adjoined square roots with its canonical monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTower {
    radicands: Vec<Rational>,
    basis: BTreeSet<Monomial>,
}

/// Outcome of adjoining `sqrt(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub sqrt: FieldElement,
    pub extended: bool,
}

impl Default for FieldTower {
    fn default() -> Self {
        Self::rationals()
    }
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower { radicands: Vec::new(), basis: [Monomial::one()].into_iter().collect() }
    }

    pub fn radicands(&self) -> &[Rational] {
        &self.radicands
    }

    pub fn basis(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter()
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// Returns the tower containing `sqrt(r)`; unchanged if it is already present.
    pub fn adjoin(&self, r: &Rational) -> (FieldTower, Adjunction) {
        let sqrt = FieldElement::sqrt_rational(r);
        let Some(m) = sqrt.coords().keys().next().cloned() else {
            return (self.clone(), Adjunction { sqrt, extended: false });
        };
        if self.basis.contains(&m) {
            return (self.clone(), Adjunction { sqrt, extended: false });
        }
        let mut basis = self.basis.clone();
        for b in &self.basis {
            basis.insert(b.mul(&m).1);
        }
        let mut radicands = self.radicands.clone();
        radicands.push(r.clone());
        (FieldTower { radicands, basis }, Adjunction { sqrt, extended: true })
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.coords().keys().all(|m| self.basis.contains(m))
    }

    /// Smallest tower (by generators) containing every given element.
    pub fn spanning<'a, I: IntoIterator<Item = &'a FieldElement>>(elements: I) -> Self {
        let mut imag = false;
        let mut roots = Vec::new();
        for x in elements {
            for m in x.coords().keys() {
                imag |= m.imag;
                roots.push(m.root.clone());
            }
        }
        let mut tower = FieldTower::rationals();
        if imag {
            tower = tower.adjoin(&Rational::from_integer((-1).into())).0;
        }
        for b in super::coprime_base(&roots) {
            tower = tower.adjoin(&Rational::from_integer(b.into())).0;
        }
        tower
    }
}
