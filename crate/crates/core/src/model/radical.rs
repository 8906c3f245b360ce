use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Factor, ModelError, Quadratic, RatFunc};
use crate::exact::{Ball, FieldElement, Rational};
use crate::poly::UniPoly;

/// Set of radicals `u_p = sqrt(Q_p(t))` multiplied together in one term.
pub type Mask = BTreeSet<Quadratic>;

/// `sum_mask R_mask(t) * prod_{p in mask} u_p` with `u_p = sqrt(Q_p(t))`.
///
/// Each radical appears at most once per term (`u_p^2` is folded back into
/// `Q_p`), which makes the representation canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalExpr {
    terms: BTreeMap<Mask, RatFunc>,
}

impl RadicalExpr {
    pub fn zero() -> Self {
        RadicalExpr::default()
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::rational(RatFunc::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(FieldElement::from_int(n))
    }

    pub fn rational(r: RatFunc) -> Self {
        Self::term(Mask::new(), r)
    }

    pub fn t() -> Self {
        Self::rational(RatFunc::t())
    }

    pub fn term(mask: Mask, r: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(mask, r);
        }
        RadicalExpr { terms }
    }

    /// `u_q = sqrt(q(t))`
    pub fn radical(q: &Quadratic) -> Self {
        Self::term([q.clone()].into_iter().collect(), RatFunc::one())
    }

    /// `q(t)^(-3/2) = u_q / q^2`
    pub fn inv_radical_cube(q: &Quadratic) -> Self {
        Self::term([q.clone()].into_iter().collect(), RatFunc::inv_factor(Factor::Quad(q.clone()), 2))
    }

    pub fn terms(&self) -> &BTreeMap<Mask, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(RatFunc::is_real)
    }

    pub fn radicals(&self) -> BTreeSet<Quadratic> {
        self.terms.keys().flatten().cloned().collect()
    }

    /// The rational part, if there are no radical terms.
    pub fn as_rational(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&Mask::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, mask: Mask, r: RatFunc) {
        if r.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(old) => &old + &r,
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RadicalExpr { terms: self.terms.iter().map(|(m, r)| (m.clone(), r.scale(s))).collect() }
    }

    pub fn mul_rat(&self, r: &RatFunc) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * r);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(FieldElement::one()), |acc, _| &acc * self)
    }

    pub fn map_coeffs<F: Fn(&FieldElement) -> FieldElement + Copy>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (m, r) in &self.terms {
            out.add_term(m.clone(), r.map_coeffs(f));
        }
        out
    }

    /// Exact value at a rational `t`, with `u_p(t)` the positive square root.
    pub fn eval_rational(&self, t: &Rational) -> Result<FieldElement, ModelError> {
        let tf = FieldElement::from_rational(t.clone());
        let mut acc = FieldElement::zero();
        for (mask, r) in &self.terms {
            let mut v = r.eval(&tf)?;
            for q in mask {
                v = &v * &FieldElement::sqrt_rational(&q.eval(t));
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// Interval enclosure of the value at a rational `t`.
    pub fn enclose_at(&self, t: &Rational, bits: u64) -> Result<Ball, ModelError> {
        let tb = Ball::point(t, bits);
        let mut acc = Ball::point(&Rational::zero(), bits);
        for (mask, r) in &self.terms {
            let mut num = Ball::point(&Rational::zero(), bits);
            for c in r.numer().coeffs().iter().rev() {
                num = &(&num * &tb) + &Ball::of(c, bits)?;
            }
            let den = r.denom_poly().eval_rational(t).to_rational()?;
            if den.is_zero() {
                return Err(ModelError::Pole(t.to_string()));
            }
            let mut v = &num * &Ball::point(&den.recip(), bits);
            for q in mask {
                v = &v * &Ball::point(&q.eval(t), bits).sqrt()?;
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (mask, r) in &self.terms {
            out.add_term(mask.clone(), r.derivative());
            // d u_p = Q_p' / (2 Q_p) * u_p
            for q in mask {
                let dq = RatFunc::new(
                    q.poly().derivative().scale(&FieldElement::from_rational(Rational::new(1.into(), 2.into()))),
                    [(Factor::Quad(q.clone()), 1)].into_iter().collect(),
                );
                out.add_term(mask.clone(), r * &dq);
            }
        }
        out
    }

    /// Substitutes `t -> k(u)` and `u_p -> s_p(u)`, returning an exact rational function in `u`
    /// as a numerator/denominator pair.
    pub fn substitute(
        &self,
        t_num: &UniPoly,
        t_den: &UniPoly,
        radicals: &BTreeMap<Quadratic, (UniPoly, UniPoly)>,
    ) -> Result<(UniPoly, UniPoly), ModelError> {
        // Each term becomes N/D; combine with a running common denominator.
        let mut acc_n = UniPoly::zero();
        let mut acc_d = UniPoly::constant(FieldElement::one());
        for (mask, r) in &self.terms {
            let (mut n, mut d) = homogenize(r.numer(), t_num, t_den);
            for (f, &e) in r.denom() {
                let (fnum, fden) = homogenize(&f.poly(), t_num, t_den);
                // 1/f^e = fden^e / fnum^e
                n = &n * &fden.pow(e);
                d = &d * &fnum.pow(e);
            }
            for q in mask {
                let (sn, sd) = radicals.get(q).ok_or_else(|| ModelError::NotSingleRadical(q.to_string()))?;
                n = &n * sn;
                d = &d * sd;
            }
            let g = acc_d.gcd(&d)?;
            let acc_cof = d.exact_div(&g)?;
            let d_cof = acc_d.exact_div(&g)?;
            acc_n = &(&acc_n * &acc_cof) + &(&n * &d_cof);
            acc_d = &acc_d * &acc_cof;
        }
        if acc_n.is_zero() {
            return Ok((acc_n, UniPoly::constant(FieldElement::one())));
        }
        let g = acc_n.gcd(&acc_d)?;
        Ok((acc_n.exact_div(&g)?, acc_d.exact_div(&g)?))
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mask, r)| {
                let rs = r.display_in(var);
                if mask.is_empty() {
                    return rs;
                }
                let us: Vec<String> = mask.iter().map(|q| format!("sqrt({})", q.to_string().replace('t', var))).collect();
                format!("({rs})*{}", us.join("*"))
            })
            .collect();
        parts.join(" + ")
    }
}

/// `p(a/b) = P(u) / b^deg p` with `P` polynomial.
fn homogenize(p: &UniPoly, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let Some(deg) = p.degree() else {
        return (UniPoly::zero(), UniPoly::constant(FieldElement::one()));
    };
    let mut n = UniPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        n = &n + &(&a.pow(k as u32) * &b.pow((deg - k) as u32)).scale(c);
    }
    (n, b.pow(deg as u32))
}

impl<'a> Add<&'a RadicalExpr> for &'a RadicalExpr {
    type Output = RadicalExpr;
    fn add(self, rhs: &RadicalExpr) -> RadicalExpr {
        let mut out = self.clone();
        for (m, r) in &rhs.terms {
            out.add_term(m.clone(), r.clone());
        }
        out
    }
}

impl<'a> Sub<&'a RadicalExpr> for &'a RadicalExpr {
    type Output = RadicalExpr;
    fn sub(self, rhs: &RadicalExpr) -> RadicalExpr {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RadicalExpr> for &'a RadicalExpr {
    type Output = RadicalExpr;
    fn mul(self, rhs: &RadicalExpr) -> RadicalExpr {
        let mut out = RadicalExpr::zero();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &rhs.terms {
                let mut r = r1 * r2;
                for q in m1.intersection(m2) {
                    r = &r * &RatFunc::poly(q.poly());
                }
                let mask: Mask = m1.symmetric_difference(m2).cloned().collect();
                out.add_term(mask, r);
            }
        }
        out
    }
}

impl Neg for &RadicalExpr {
    type Output = RadicalExpr;
    fn neg(self) -> RadicalExpr {
        RadicalExpr { terms: self.terms.iter().map(|(m, r)| (m.clone(), -r)).collect() }
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    radicals: Vec<Quadratic>,
    coeff: RatFunc,
}

impl Serialize for RadicalExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, r)| TermRepr {
                radicals: m.iter().cloned().collect(),
                coeff: r.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadicalExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut out = RadicalExpr::zero();
        for t in v {
            out.add_term(t.radicals.into_iter().collect(), t.coeff);
        }
        Ok(out)
    }
}

/// Polynomial in the parameter `c` with [`RadicalExpr`] coefficients (lowest power first).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamEntry {
    coeffs: Vec<RadicalExpr>,
}

impl ParamEntry {
    pub fn new(mut coeffs: Vec<RadicalExpr>) -> Self {
        while coeffs.last().is_some_and(RadicalExpr::is_zero) {
            coeffs.pop();
        }
        ParamEntry { coeffs }
    }

    /// `a + c b`
    pub fn affine(a: RadicalExpr, b: RadicalExpr) -> Self {
        Self::new(vec![a, b])
    }

    pub fn zero() -> Self {
        ParamEntry::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(RadicalExpr::is_real)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `c^k`.
    pub fn coeff(&self, k: usize) -> RadicalExpr {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[RadicalExpr] {
        &self.coeffs
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.scale(s)).collect())
    }

    /// Evaluates `sum_k coeff_k * c^k` as a [`RadicalExpr`] for a given `c(t)`.
    pub fn at_c(&self, c: &RadicalExpr) -> RadicalExpr {
        self.coeffs.iter().rev().fold(RadicalExpr::zero(), |acc, x| &(&acc * c) + x)
    }

    pub fn eval(&self, c: &FieldElement, t: &Rational) -> Result<FieldElement, ModelError> {
        let mut acc = FieldElement::zero();
        for x in self.coeffs.iter().rev() {
            acc = &(&acc * c) + &x.eval_rational(t)?;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a ParamEntry> for &'a ParamEntry {
    type Output = ParamEntry;
    fn add(self, rhs: &ParamEntry) -> ParamEntry {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamEntry::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a ParamEntry> for &'a ParamEntry {
    type Output = ParamEntry;
    fn sub(self, rhs: &ParamEntry) -> ParamEntry {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamEntry::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a ParamEntry> for &'a ParamEntry {
    type Output = ParamEntry;
    fn mul(self, rhs: &ParamEntry) -> ParamEntry {
        if self.is_zero() || rhs.is_zero() {
            return ParamEntry::zero();
        }
        let mut out = vec![RadicalExpr::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ParamEntry::new(out)
    }
}

impl fmt::Display for ParamEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| match k {
                0 => format!("[{x}]"),
                1 => format!("c*[{x}]"),
                _ => format!("c^{k}*[{x}]"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
