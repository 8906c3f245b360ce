use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{char_inner_product, FiniteGroup, GroupError, GroupRep, Matrix};
use crate::exact::FieldElement;

const S4_JSON: &str = include_str!("../../data/s4.json");
const OH_JSON: &str = include_str!("../../data/oh.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepFile {
    pub name: String,
    pub degree: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    #[serde(default)]
    pub notes: Vec<String>,
    pub generators: Vec<Vec<usize>>,
    pub irreps: Vec<IrrepFile>,
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub name: String,
    pub rep: GroupRep,
}

/// A validated group together with a complete set of irreducible representations.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub group: Arc<FiniteGroup>,
    pub irreps: Vec<Irrep>,
}

impl GroupData {
    pub fn s4() -> Self {
        Self::from_json(S4_JSON).expect("embedded S4 data is valid")
    }

    pub fn oh() -> Self {
        Self::from_json(OH_JSON).expect("embedded O_h data is valid")
    }

    pub fn load(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let file: GroupFile = serde_json::from_str(text).map_err(|e| GroupError::Io(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &GroupFile) -> Result<Self, GroupError> {
        let group = Arc::new(FiniteGroup::from_generators(&file.name, &file.generators)?);
        if group.order() != file.order {
            return Err(GroupError::Validation(format!(
                "declared order {} but generators give {}",
                file.order,
                group.order()
            )));
        }
        let mut irreps = Vec::with_capacity(file.irreps.len());
        for ir in &file.irreps {
            let images = ir
                .matrices
                .iter()
                .map(|m| parse_matrix(m, ir.degree))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GroupError::Validation(format!("irrep {}: {e}", ir.name)))?;
            let rep = GroupRep::from_generator_images(group.clone(), images)
                .map_err(|e| GroupError::Validation(format!("irrep {}: {e}", ir.name)))?;
            irreps.push(Irrep { name: ir.name.clone(), rep });
        }
        let data = GroupData { group, irreps };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<(), GroupError> {
        let chars: Vec<_> = self.irreps.iter().map(|r| r.rep.character()).collect();
        for (a, ca) in chars.iter().enumerate() {
            for (b, cb) in chars.iter().enumerate() {
                let ip = char_inner_product(&self.group, ca, cb);
                let want = FieldElement::from_int((a == b) as i64);
                if ip != want {
                    return Err(GroupError::Validation(format!(
                        "character inner product ({}, {}) = {ip}, expected {want}",
                        self.irreps[a].name, self.irreps[b].name
                    )));
                }
            }
        }
        let sum: usize = self.irreps.iter().map(|r| r.rep.degree().pow(2)).sum();
        if sum != self.group.order() {
            return Err(GroupError::Validation(format!(
                "sum of squared degrees {sum} != group order {}",
                self.group.order()
            )));
        }
        Ok(())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.rep.degree()).collect()
    }

    pub fn irrep_reps(&self) -> Vec<GroupRep> {
        self.irreps.iter().map(|r| r.rep.clone()).collect()
    }

    /// Same data with irreps listed in the given order of current indices.
    pub fn reordered(&self, order: &[usize]) -> Self {
        GroupData { group: self.group.clone(), irreps: order.iter().map(|&i| self.irreps[i].clone()).collect() }
    }

    /// Representation of this group from generator images.
    pub fn rep_from_images(&self, images: Vec<Matrix>) -> Result<GroupRep, GroupError> {
        GroupRep::from_generator_images(self.group.clone(), images)
    }
}

fn parse_matrix(rows: &[Vec<String>], degree: usize) -> Result<Matrix, GroupError> {
    if rows.len() != degree || rows.iter().any(|r| r.len() != degree) {
        return Err(GroupError::Shape(format!("expected a {degree}x{degree} matrix")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| s.parse::<FieldElement>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_inventory() {
        let d = GroupData::s4();
        assert_eq!(d.group.order(), 24);
        assert_eq!(d.degrees(), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn oh_inventory() {
        let d = GroupData::oh();
        assert_eq!(d.group.order(), 48);
        assert_eq!(d.degrees(), vec![1, 1, 1, 1, 2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn perturbed_generator_matrix_rejected() {
        let mut file: GroupFile = serde_json::from_str(S4_JSON).unwrap();
        file.irreps[3].matrices[1][0][0] = "2".into();
        let err = GroupData::from_file(&file).unwrap_err();
        assert!(matches!(err, GroupError::Validation(_)), "{err}");
    }

    #[test]
    fn missing_irrep_rejected() {
        let mut file: GroupFile = serde_json::from_str(S4_JSON).unwrap();
        file.irreps.pop();
        let err = GroupData::from_file(&file).unwrap_err();
        assert!(err.to_string().contains("squared degrees"), "{err}");
    }
}
