use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::PolyError;
use crate::exact::{FieldElement, Rational};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![FieldElement::zero(), FieldElement::one()])
    }

    /// `x - r`
    pub fn linear_root(r: &FieldElement) -> Self {
        Self::new(vec![-r, FieldElement::one()])
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| FieldElement::from_int(v)).collect())
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        Self::new(c.iter().cloned().map(FieldElement::from_rational).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> FieldElement {
        self.eval(&FieldElement::from_rational(x.clone()))
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElement::from_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(FieldElement::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![FieldElement::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// Largest `k` with `x^k` dividing `self`, and the quotient.
    pub fn split_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// `p(q(x))`
    pub fn compose(&self, q: &UniPoly) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// `p(x + a)`
    pub fn taylor_shift(&self, a: &FieldElement) -> Self {
        self.compose(&UniPoly::new(vec![a.clone(), FieldElement::one()]))
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dd = d.degree().ok_or(PolyError::ZeroPolynomial)?;
        let inv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![FieldElement::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    pub fn monic(&self) -> Result<UniPoly, PolyError> {
        let inv = self.lc().inv()?;
        Ok(self.scale(&inv))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_real)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<UniPoly, PolyError> {
        let c = s.iter().map(|x| x.parse::<FieldElement>()).collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(c))
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coef = if c.coords().len() > 1 { format!("({c})") } else { c.to_string() };
            parts.push(match (i, coef.as_str()) {
                (0, _) => coef,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{coef}*{mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = UniPoly::from_ints(&[-1, 0, 0, 2, 1]);
        let b = UniPoly::from_ints(&[1, 3, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_over_tower() {
        let s2: FieldElement = "sqrt(2)".parse().unwrap();
        let f = &UniPoly::linear_root(&s2) * &UniPoly::from_ints(&[1, 1]);
        let g = &UniPoly::linear_root(&s2) * &UniPoly::from_ints(&[-3, 1]);
        assert_eq!(f.gcd(&g).unwrap(), UniPoly::linear_root(&s2));
    }

    #[test]
    fn compose_and_shift() {
        let p = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(p.taylor_shift(&FieldElement::from_int(1)), UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(p.compose(&UniPoly::from_ints(&[1, 1])), UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(UniPoly::from_ints(&[0, 0, 3, 1]).split_x_power(), (2, UniPoly::from_ints(&[3, 1])));
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[1, -1, 3]).display_in("u"), "3*u^2 - u + 1");
    }
}
