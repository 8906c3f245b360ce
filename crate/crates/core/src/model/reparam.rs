use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ModelError, Quadratic, RadicalExpr};
use crate::exact::{rat_int, FieldElement, Rational};
use crate::poly::{IntervalQ, UniPoly};

/// An expression in one radical rewritten as a rational function of `u`,
/// where `t = k(u)` maps `interval` increasingly onto (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reparam {
    /// `None` when the expression had no radical; then `u = t`.
    pub radical: Option<Quadratic>,
    pub kappa_num: UniPoly,
    pub kappa_den: UniPoly,
    pub num: UniPoly,
    pub den: UniPoly,
    pub interval: IntervalQ,
}

fn ends(q: &Quadratic) -> (FieldElement, FieldElement) {
    let a = FieldElement::from_rational(q.a.clone().into());
    let b = FieldElement::from_rational(q.b.clone().into());
    let sd = FieldElement::sqrt_rational(&(-q.discriminant()).into());
    let end = |b: &FieldElement| {
        // (b + sqrt(b^2 - disc)) / sqrt(-disc)
        let r = (b * b).as_rational().expect("rational") - Rational::from_integer(q.discriminant());
        (b + &FieldElement::sqrt_rational(&r)).checked_div(&sd).expect("nonzero")
    };
    let b2a = &b + &(&a + &a);
    (end(&b), end(&b2a))
}

impl Reparam {
    /// `u = k^-1(t)` for a rational `t`.
    pub fn u_of_t(&self, t: &Rational) -> FieldElement {
        let Some(q) = &self.radical else {
            return FieldElement::from_rational(t.clone());
        };
        let a = Rational::from_integer(q.a.clone());
        let lin = Rational::from_integer(2.into()) * &a * t + Rational::from_integer(q.b.clone());
        let root = FieldElement::sqrt_rational(&(a * q.eval(t)));
        let sd = FieldElement::sqrt_rational(&(-q.discriminant()).into());
        (&FieldElement::from_rational(lin) + &(&root + &root)).checked_div(&sd).expect("nonzero")
    }

    pub fn t_of_u(&self, u: &FieldElement) -> Result<FieldElement, ModelError> {
        Ok(self.kappa_num.eval(u).checked_div(&self.kappa_den.eval(u))?)
    }
}

/// Rewrites `e` through `t = k(u)` so that its single radical becomes rational in `u`.
pub fn reparametrize(e: &RadicalExpr) -> Result<Reparam, ModelError> {
    let rads = e.radicals();
    if rads.len() > 1 {
        let names: Vec<String> = rads.iter().map(|q| q.to_string()).collect();
        return Err(ModelError::NotSingleRadical(names.join(", ")));
    }
    let Some(q) = rads.into_iter().next() else {
        let one = UniPoly::constant(FieldElement::one());
        let (num, den) = e.substitute(&UniPoly::x(), &one, &BTreeMap::new())?;
        return Ok(Reparam {
            radical: None,
            kappa_num: UniPoly::x(),
            kappa_den: one,
            num,
            den,
            interval: IntervalQ::unit(),
        });
    };
    let a = FieldElement::from_rational(q.a.clone().into());
    let b = FieldElement::from_rational(q.b.clone().into());
    let sd = FieldElement::sqrt_rational(&(-q.discriminant()).into());
    // t = (sd (u^2 - 1) - 2 b u) / (4 a u)
    let kappa_num = UniPoly::new(vec![-&sd, -(&b + &b), sd.clone()]);
    let kappa_den = UniPoly::new(vec![FieldElement::zero(), a.scale(&rat_int(4))]);
    // sqrt(Q(k(u))) = sd / (2 sqrt(a)) * (u^2 + 1) / (2u)
    let factor = sd.checked_div(&FieldElement::sqrt_rational(&q.a.clone().into()).scale(&rat_int(2)))?;
    let s_num = UniPoly::new(vec![factor.clone(), FieldElement::zero(), factor]);
    let s_den = UniPoly::new(vec![FieldElement::zero(), FieldElement::from_int(2)]);
    let radicals = [(q.clone(), (s_num, s_den))].into_iter().collect();
    let (num, den) = e.substitute(&kappa_num, &kappa_den, &radicals)?;
    let (lo, hi) = ends(&q);
    Ok(Reparam { radical: Some(q), kappa_num, kappa_den, num, den, interval: IntervalQ::open(lo, hi) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn tetrahedron_interval() {
        let q = Quadratic::from_ints(3, 2, 3);
        let r = reparametrize(&RadicalExpr::radical(&q)).unwrap();
        assert_eq!(r.interval.lo, "sqrt(2)".parse().unwrap());
        assert_eq!(r.interval.hi, "sqrt(2) + sqrt(3)".parse().unwrap());
        assert_eq!(r.t_of_u(&r.interval.lo).unwrap(), FieldElement::zero());
        assert_eq!(r.t_of_u(&r.interval.hi).unwrap(), FieldElement::one());
    }

    #[test]
    fn round_trip_through_kappa() {
        let q = Quadratic::from_ints(3, 2, 3);
        let e = &RadicalExpr::inv_radical_cube(&q) + &RadicalExpr::t();
        let r = reparametrize(&e).unwrap();
        let t0 = rat(1, 2);
        let u0 = r.u_of_t(&t0);
        assert_eq!(r.t_of_u(&u0).unwrap(), FieldElement::from_rational(t0.clone()));
        let via_u = r.num.eval(&u0).checked_div(&r.den.eval(&u0)).unwrap();
        assert_eq!(via_u, e.eval_rational(&t0).unwrap());
    }

    #[test]
    fn multiple_radicals_rejected() {
        let e = &RadicalExpr::radical(&Quadratic::from_ints(3, 2, 3)) + &RadicalExpr::radical(&Quadratic::from_ints(3, -2, 3));
        assert!(matches!(reparametrize(&e), Err(ModelError::NotSingleRadical(_))));
    }
}
