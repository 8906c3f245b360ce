use std::collections::{HashMap, VecDeque};

use super::GroupError;

/// A permutation group enumerated breadth-first from its generators.
///
/// Element 0 is the identity; element indices follow BFS discovery order
/// over right multiplication by the generators, in generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    perms: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl FiniteGroup {
    pub fn from_generators(name: &str, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = gens.first().map_or(0, Vec::len);
        for g in gens {
            if g.len() != n || !is_permutation(g) {
                return Err(GroupError::Validation(format!("generator {g:?} is not a permutation of 0..{n}")));
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut perms = vec![id.clone()];
        let mut words = vec![Vec::new()];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let p = compose(&perms[e], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), perms.len());
                    let mut w = words[e].clone();
                    w.push(s);
                    queue.push_back(perms.len());
                    perms.push(p);
                    words.push(w);
                }
            }
        }
        let order = perms.len();
        let mult: Vec<Vec<usize>> =
            (0..order).map(|a| (0..order).map(|b| index[&compose(&perms[a], &perms[b])]).collect()).collect();
        let inverse: Vec<usize> = (0..order).map(|a| mult[a].iter().position(|&x| x == 0).expect("group")).collect();
        let generators = gens.iter().map(|g| index[g]).collect();

        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for a in 0..order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..order).map(|g| mult[mult[g][a]][inverse[g]]).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                class_of[x] = classes.len();
            }
            classes.push(class);
        }
        let group = FiniteGroup { name: name.to_string(), perms, words, mult, inverse, generators, classes, class_of };
        group.validate()?;
        Ok(group)
    }

    /// The trivial group acting on `n` points.
    pub fn trivial(n: usize) -> Self {
        Self::from_generators("1", &[(0..n).collect()]).expect("identity generates")
    }

    fn validate(&self) -> Result<(), GroupError> {
        let n = self.order();
        if n <= 48 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]] {
                            return Err(GroupError::Validation(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            if self.mult[a][self.inverse[a]] != 0 || self.mult[self.inverse[a]][a] != 0 {
                return Err(GroupError::Validation(format!("inverse table inconsistent at {a}")));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.perms[0].len()
    }

    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    /// Generator indices whose product, left to right, is element `g`.
    pub fn word(&self, g: usize) -> &[usize] {
        &self.words[g]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Element indices of the generators, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.perms.iter().position(|p| p == perm)
    }
}
