use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Factor, ModelError, Quadratic, RadicalExpr, RatFunc};
use crate::exact::Sign;
use crate::poly::{Exponent, MultiPoly};

/// How quadratic denominators are treated when clearing a lifted expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftStyle {
    /// Radicals appear to degree at most one; `Q_p` stays a polynomial factor in `t`.
    Multilinear,
    /// `Q_p^-e` is rewritten as `u_p^-2e`, so radicals carry the denominators.
    RadicalPowers,
}

/// One factor removed when clearing denominators, with its sign on (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cleared {
    T { factor: Factor, exponent: u32 },
    U { radical: Quadratic, exponent: u32 },
}

impl Cleared {
    pub fn sign_on_unit(&self) -> Option<Sign> {
        match self {
            Cleared::T { factor, exponent } => {
                let s = factor.sign_on_unit()?;
                Some(if exponent % 2 == 0 { Sign::Positive } else { s })
            }
            Cleared::U { .. } => Some(Sign::Positive),
        }
    }
}

/// Polynomial `N(t, u_1, ..., u_L)` with `e = N(g(t)) / D(t)` along `g(t) = (t, sqrt(Q_1(t)), ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lift {
    pub style: LiftStyle,
    pub radicals: Vec<Quadratic>,
    pub numerator: MultiPoly,
    pub cleared: Vec<Cleared>,
}

impl Lift {
    pub fn vars(radicals: &[Quadratic]) -> Vec<String> {
        let mut v = vec!["t".to_string()];
        v.extend((1..=radicals.len()).map(|k| format!("u{k}")));
        v
    }

    /// Sign of the cleared denominator on (0, 1).
    pub fn denominator_sign(&self) -> Option<Sign> {
        self.cleared.iter().try_fold(Sign::Positive, |acc, c| Some(acc.times(c.sign_on_unit()?)))
    }

    /// `N(g(t))` as a radical expression.
    pub fn numerator_on_curve(&self) -> RadicalExpr {
        let mut acc = RadicalExpr::zero();
        for (e, c) in self.numerator.terms() {
            let mut term = RadicalExpr::rational(RatFunc::t_pow(e.0[0])).scale(c);
            for (q, &k) in self.radicals.iter().zip(&e.0[1..]) {
                term = &term * &RadicalExpr::radical(q).pow(k);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// `D` evaluated along the curve, as a radical expression.
    pub fn denominator_on_curve(&self) -> RadicalExpr {
        self.cleared.iter().fold(RadicalExpr::from_int(1), |acc, c| match c {
            Cleared::T { factor, exponent } => acc.mul_rat(&RatFunc::poly(factor.poly().pow(*exponent))),
            Cleared::U { radical, exponent } => &acc * &RadicalExpr::radical(radical).pow(*exponent),
        })
    }

    /// Exact check of `N(g(t)) = e(t) D(t)`.
    pub fn verify(&self, e: &RadicalExpr) -> bool {
        self.numerator_on_curve() == e * &self.denominator_on_curve()
    }
}

/// Lifts `e` to a polynomial in `(t, u_1, ..., u_L)` after clearing denominators.
pub fn lift(e: &RadicalExpr, style: LiftStyle) -> Result<Lift, ModelError> {
    let mut rads: BTreeSet<Quadratic> = e.radicals();
    if style == LiftStyle::RadicalPowers {
        for r in e.terms().values() {
            for f in r.denom().keys() {
                if let Factor::Quad(q) = f {
                    rads.insert(q.clone());
                }
            }
        }
    }
    let radicals: Vec<Quadratic> = rads.into_iter().collect();
    let idx = |q: &Quadratic| radicals.iter().position(|x| x == q).expect("radical listed");

    // Each term becomes (R'(t), exponent vector over radicals, possibly negative).
    let mut pieces: Vec<(RatFunc, Vec<i64>)> = Vec::new();
    for (mask, r) in e.terms() {
        let mut exps = vec![0i64; radicals.len()];
        for q in mask.iter() {
            exps[idx(q)] += 1;
        }
        let r = match style {
            LiftStyle::Multilinear => r.clone(),
            LiftStyle::RadicalPowers => {
                let mut den = BTreeMap::new();
                for (f, &k) in r.denom() {
                    match f {
                        Factor::Quad(q) => exps[idx(q)] -= 2 * k as i64,
                        _ => {
                            den.insert(f.clone(), k);
                        }
                    }
                }
                RatFunc::new(r.numer().clone(), den)
            }
        };
        pieces.push((r, exps));
    }
    let mut t_den: BTreeMap<Factor, u32> = BTreeMap::new();
    for (r, _) in &pieces {
        for (f, &k) in r.denom() {
            let slot = t_den.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(k);
        }
    }
    let shift: Vec<i64> =
        (0..radicals.len()).map(|p| pieces.iter().map(|(_, x)| -x[p]).max().unwrap_or(0).max(0)).collect();

    let vars = Lift::vars(&radicals);
    let mut numerator = MultiPoly::zero(vars);
    for (r, exps) in &pieces {
        let n = r.numer_over(&t_den);
        for (k, c) in n.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut ex = vec![k as u32];
            ex.extend(exps.iter().zip(&shift).map(|(x, s)| (x + s) as u32));
            numerator.add_term(Exponent(ex), c.clone());
        }
    }
    let mut cleared: Vec<Cleared> =
        t_den.into_iter().map(|(factor, exponent)| Cleared::T { factor, exponent }).collect();
    for (q, &s) in radicals.iter().zip(&shift) {
        if s > 0 {
            cleared.push(Cleared::U { radical: q.clone(), exponent: s as u32 });
        }
    }
    Ok(Lift { style, radicals, numerator, cleared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, FieldElement};

    fn sample() -> RadicalExpr {
        let p1 = Quadratic::from_ints(3, 2, 3);
        let p2 = Quadratic::from_ints(3, -2, 3);
        let a = RadicalExpr::inv_radical_cube(&p1).mul_rat(&RatFunc::poly(crate::poly::UniPoly::from_ints(&[1, 6, 1])));
        let b = RadicalExpr::inv_radical_cube(&p2).scale(&FieldElement::from_int(-72));
        let c = RadicalExpr::rational(RatFunc::inv_factor(Factor::Lin(rat(1, 1)), 1));
        &(&a + &b) + &c
    }

    #[test]
    fn lift_identity_both_styles() {
        let e = sample();
        for style in [LiftStyle::Multilinear, LiftStyle::RadicalPowers] {
            let l = lift(&e, style).unwrap();
            assert!(l.verify(&e), "{style:?}");
            assert_eq!(l.radicals.len(), 2);
            assert_eq!(l.denominator_sign(), Some(Sign::Negative));
        }
    }

    #[test]
    fn multilinear_degrees() {
        let l = lift(&sample(), LiftStyle::Multilinear).unwrap();
        let d = l.numerator.degrees();
        assert_eq!(&d[1..], &[1, 1]);
        let l = lift(&sample(), LiftStyle::RadicalPowers).unwrap();
        assert_eq!(&l.numerator.degrees()[1..], &[3, 3]);
    }

    #[test]
    fn rational_expression_lifts_to_itself() {
        let e = RadicalExpr::rational(RatFunc::poly(crate::poly::UniPoly::from_ints(&[1, 2])));
        let l = lift(&e, LiftStyle::Multilinear).unwrap();
        assert!(l.radicals.is_empty());
        assert!(l.cleared.is_empty());
        assert_eq!(l.numerator.to_uni(0).unwrap(), crate::poly::UniPoly::from_ints(&[1, 2]));
    }
}
