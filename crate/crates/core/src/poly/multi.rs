use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{PolyError, UniPoly};
use crate::exact::FieldElement;

/// Exponent multi-index ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over named variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MultiPolyRepr", from = "MultiPolyRepr")]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, FieldElement>,
}

#[derive(Serialize, Deserialize)]
struct MultiPolyRepr {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, FieldElement)>,
}

impl From<MultiPoly> for MultiPolyRepr {
    fn from(p: MultiPoly) -> Self {
        MultiPolyRepr { terms: p.terms.into_iter().map(|(e, c)| (e.0, c)).collect(), vars: p.vars }
    }
}

impl From<MultiPolyRepr> for MultiPoly {
    fn from(r: MultiPolyRepr) -> Self {
        let mut p = MultiPoly::zero(r.vars);
        for (e, c) in r.terms {
            p.add_term(Exponent(e), c);
        }
        p
    }
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn with_vars(names: &[&str]) -> Self {
        Self::zero(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn constant(vars: Vec<String>, c: FieldElement) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(Exponent(vec![0; n]), c);
        p
    }

    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let n = vars.len();
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Exponent(e), FieldElement::one());
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `i`.
    pub fn from_uni(vars: Vec<String>, i: usize, u: &UniPoly) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = k as u32;
            p.add_term(Exponent(e), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, FieldElement)>>(vars: Vec<String>, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars(), "exponent length");
            p.add_term(Exponent(e), c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElement {
        self.terms.get(&Exponent(e.to_vec())).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.nvars()).map(|i| self.degree_in(i)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Exponent::total).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let mut p = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * s);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), FieldElement::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    v = &v * &x.pow(k);
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// The univariate polynomial when only variable `i` occurs.
    pub fn to_uni(&self, i: usize) -> Option<UniPoly> {
        let mut c = vec![FieldElement::zero(); self.degree_in(i) as usize + 1];
        for (e, v) in &self.terms {
            if e.0.iter().enumerate().any(|(j, &k)| j != i && k != 0) {
                return None;
            }
            c[e.0[i] as usize] = v.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn map_coeffs<F: Fn(&FieldElement) -> FieldElement>(&self, f: F) -> Self {
        let mut p = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable lists differ");
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut p = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                p.add_term(Exponent(e), ca * cb);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let coef = if c.coords().len() > 1 { format!("({c})") } else { c.to_string() };
            parts.push(if mono.is_empty() { coef } else { format!("{coef}*{}", mono.join("*")) });
        }
        f.write_str(&parts.join(" + "))
    }
}
