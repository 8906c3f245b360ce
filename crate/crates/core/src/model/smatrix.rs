use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{Configuration, Factor, ModelError, ParamEntry, Quadratic, RadicalExpr, RatFunc};
use crate::exact::{FieldElement, Rational};
use crate::group::{check_equivariance, BlockEntry, EntryMatrix, GroupError};

/// Distance kernel `|q_j - q_i|^-3` up to a constant factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kernel {
    Unit,
    /// `(t - r)^-3`
    InvCube(Rational),
    /// `Q(t)^(-3/2)`
    InvRad(Quadratic),
}

/// Basis function `c^[c] * t^t_pow * kernel(t)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub c: bool,
    pub t_pow: u32,
    pub kernel: Kernel,
}

impl Atom {
    pub fn function(&self) -> RadicalExpr {
        let tp = RatFunc::t_pow(self.t_pow);
        match &self.kernel {
            Kernel::Unit => RadicalExpr::rational(tp),
            Kernel::InvCube(r) => RadicalExpr::rational(&tp * &RatFunc::inv_factor(Factor::Lin(r.clone()), 3)),
            Kernel::InvRad(q) => RadicalExpr::inv_radical_cube(q).mul_rat(&tp),
        }
    }
}

/// Finite linear combination of [`Atom`]s; the entries of `S(c, t)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<Atom, FieldElement>,
}

impl LinComb {
    pub fn terms(&self) -> &BTreeMap<Atom, FieldElement> {
        &self.terms
    }

    pub fn add_atom(&mut self, a: Atom, x: FieldElement) {
        if x.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&a) {
            Some(old) => &old + &x,
            None => x,
        };
        if !sum.is_zero() {
            self.terms.insert(a, sum);
        }
    }

    /// Normal form `A(t) + c B(t)`.
    pub fn to_param(&self) -> ParamEntry {
        let mut a = RadicalExpr::zero();
        let mut b = RadicalExpr::zero();
        for (atom, x) in &self.terms {
            let f = atom.function().scale(x);
            if atom.c {
                b = &b + &f;
            } else {
                a = &a + &f;
            }
        }
        ParamEntry::affine(a, b)
    }

    /// Exact value at rational `(c, t)`.
    pub fn eval(&self, c: &FieldElement, t: &Rational) -> Result<FieldElement, ModelError> {
        self.to_param().eval(c, t)
    }
}

impl BlockEntry for LinComb {
    fn zero() -> Self {
        LinComb::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_scaled(&mut self, s: &FieldElement, other: &Self) {
        for (a, x) in &other.terms {
            self.add_atom(a.clone(), s * x);
        }
    }
    fn is_real(&self) -> bool {
        self.terms.values().all(FieldElement::is_real)
    }
}

pub type SMatrix = EntryMatrix<LinComb>;

/// `r^(-3/2)` for a positive rational `r`.
fn inv_three_halves(r: &Rational) -> FieldElement {
    FieldElement::sqrt_rational(r).inv().expect("positive").scale(&r.recip())
}

/// Kernel and constant `k` with `|q_j - q_i|^-3 = k * kernel(t)` on (0, 1).
fn distance_kernel(a: &Rational, b: &Rational, c: &Rational) -> Result<(FieldElement, Kernel), ModelError> {
    if a.is_zero() && b.is_zero() {
        if c.is_zero() {
            return Err(ModelError::CoincidentPositions);
        }
        return Ok((inv_three_halves(c), Kernel::Unit));
    }
    let disc = b * b - Rational::from_integer(4.into()) * a * c;
    if disc.is_zero() {
        let r = -b / (Rational::from_integer(2.into()) * a);
        let k = inv_three_halves(a);
        if !r.is_positive() {
            return Ok((k, Kernel::InvCube(r)));
        }
        if r >= Rational::one() {
            return Ok((-k, Kernel::InvCube(r)));
        }
        return Err(ModelError::Unsupported(format!("bodies collide at t = {r}")));
    }
    let (kq, q) = Quadratic::primitive(a, b, c)?;
    Ok((inv_three_halves(&kq), Kernel::InvRad(q)))
}

/// `S(c, t)`: block row `i`, column `j` holds `(|q_j - q_i|^-3 - c)(q_j - q_i)`.
pub fn build_s(config: &Configuration) -> Result<SMatrix, ModelError> {
    let n = config.positions.len();
    let d = config.dim;
    let cells: Vec<Result<Vec<(usize, usize, LinComb)>, ModelError>> = (0..n * n)
        .into_par_iter()
        .map(|x| {
            let (i, j) = (x / n, x % n);
            if i == j {
                return Ok(Vec::new());
            }
            let dc: Vec<Rational> = (0..d).map(|r| &config.positions[j].constant[r] - &config.positions[i].constant[r]).collect();
            let dl: Vec<Rational> = (0..d).map(|r| &config.positions[j].linear[r] - &config.positions[i].linear[r]).collect();
            let dot = |u: &[Rational], v: &[Rational]| u.iter().zip(v).fold(Rational::zero(), |acc, (p, q)| acc + p * q);
            let a = dot(&dl, &dl);
            let b = dot(&dc, &dl) * Rational::from_integer(2.into());
            let c = dot(&dc, &dc);
            let (k, kernel) = distance_kernel(&a, &b, &c)?;
            Ok((0..d)
                .map(|r| {
                    let mut e = LinComb::default();
                    for (t_pow, x) in [(0u32, &dc[r]), (1, &dl[r])] {
                        let xf = FieldElement::from_rational(x.clone());
                        e.add_atom(Atom { c: false, t_pow, kernel: kernel.clone() }, &k * &xf);
                        e.add_atom(Atom { c: true, t_pow, kernel: Kernel::Unit }, -xf);
                    }
                    (i * d + r, j, e)
                })
                .collect())
        })
        .collect();
    let mut s = SMatrix::zeros(n * d, n);
    for cell in cells {
        for (row, col, e) in cell? {
            s.set(row, col, e);
        }
    }
    Ok(s)
}

/// Verifies `S theta(g) = (theta (x) rho)(g) S` on every generator.
pub fn check_symmetry(s: &SMatrix, config: &Configuration) -> Result<(), ModelError> {
    let theta = config.theta()?;
    let tr = theta.tensor(&config.rho()?)?;
    check_equivariance(s, &theta, &tr).map_err(|e| match e {
        GroupError::NotEquivariant { generator, row, col } => ModelError::SymmetryViolated { generator, row, col },
        other => other.into(),
    })
}
