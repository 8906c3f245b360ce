use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ModelError, Quadratic};
use crate::exact::{FieldElement, Rational};
use crate::poly::{BoxQ, IntervalQ};

/// One coordinate of a parametrized curve `g(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveComponent {
    /// `g_j(t) = t`.
    Identity,
    /// `g_j(t) = c0 + c1 t + c2 t^2` with rational coefficients.
    Quadratic {
        #[serde(with = "crate::exact::rational_str")]
        c0: Rational,
        #[serde(with = "crate::exact::rational_str")]
        c1: Rational,
        #[serde(with = "crate::exact::rational_str")]
        c2: Rational,
    },
    /// `g_j(t) = sqrt(Q(t))`.
    Sqrt(Quadratic),
}

/// Closed-aware extremes of `c0 + c1 t + c2 t^2` over an interval: `(min, min_closed, max, max_closed)`.
fn quadratic_range(
    c: [&Rational; 3],
    lo: &Rational,
    hi: &Rational,
    lo_closed: bool,
    hi_closed: bool,
) -> (Rational, bool, Rational, bool) {
    let f = |x: &Rational| c[0] + c[1] * x + c[2] * x * x;
    let (vlo, vhi) = (f(lo), f(hi));
    let (mut min, mut min_closed, mut max, mut max_closed) = match vlo.cmp(&vhi) {
        std::cmp::Ordering::Less => (vlo, lo_closed, vhi, hi_closed),
        std::cmp::Ordering::Greater => (vhi, hi_closed, vlo, lo_closed),
        std::cmp::Ordering::Equal => (vlo.clone(), lo_closed || hi_closed, vlo, lo_closed || hi_closed),
    };
    if !c[2].is_zero() {
        let v = -c[1] / (Rational::from_integer(2.into()) * c[2]);
        if *lo < v && v < *hi {
            if c[2].is_positive() {
                (min, min_closed) = (f(&v), true);
            } else {
                (max, max_closed) = (f(&v), true);
            }
        }
    }
    (min, min_closed, max, max_closed)
}

impl CurveComponent {
    /// Range of the component over the rational interval `i`.
    pub fn range(&self, i: &IntervalQ) -> Result<IntervalQ, ModelError> {
        let (lo, hi) = i
            .rational_ends()
            .ok_or_else(|| ModelError::Unsupported(format!("curve box over irrational interval {i}")))?;
        let (min, min_closed, max, max_closed) = match self {
            CurveComponent::Identity => return Ok(i.clone()),
            CurveComponent::Quadratic { c0, c1, c2 } => quadratic_range([c0, c1, c2], &lo, &hi, i.lo_closed, i.hi_closed),
            CurveComponent::Sqrt(q) => {
                let (a, b, c) = (Rational::from_integer(q.a.clone()), q.b.clone().into(), q.c.clone().into());
                let r = quadratic_range([&c, &b, &a], &lo, &hi, i.lo_closed, i.hi_closed);
                if r.0.is_negative() {
                    return Err(ModelError::Unsupported(format!("{q} is negative on {i}")));
                }
                let sq = |x: &Rational| FieldElement::sqrt_rational(x);
                return Ok(IntervalQ { lo: sq(&r.0), hi: sq(&r.2), lo_closed: r.1, hi_closed: r.3 });
            }
        };
        let fe = FieldElement::from_rational;
        Ok(IntervalQ { lo: fe(min), hi: fe(max), lo_closed: min_closed, hi_closed: max_closed })
    }
}

/// Box `g_1(I) x ... x g_n(I)` containing the arc of a curve over `I`.
pub fn component_box(components: &[CurveComponent], i: &IntervalQ) -> Result<BoxQ, ModelError> {
    Ok(BoxQ::new(components.iter().map(|c| c.range(i)).collect::<Result<_, _>>()?))
}

/// `I x u_1(I) x ... x u_L(I)` for the curve `g(t) = (t, sqrt(Q_1(t)), ...)`, with `I` inside [0, 1].
pub fn curve_box(radicals: &[Quadratic], i: &IntervalQ) -> Result<BoxQ, ModelError> {
    if let Some((lo, hi)) = i.rational_ends() {
        if lo.is_negative() || hi > Rational::from_integer(1.into()) {
            return Err(ModelError::Unsupported(format!("interval {i} leaves [0, 1]")));
        }
    }
    let mut comps = vec![CurveComponent::Identity];
    comps.extend(radicals.iter().cloned().map(CurveComponent::Sqrt));
    component_box(&comps, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn cube() -> Vec<Quadratic> {
        vec![Quadratic::from_ints(3, 2, 3), Quadratic::from_ints(3, -2, 3)]
    }

    #[test]
    fn left_half_box() {
        let i = IntervalQ { lo: rat(0, 1).into(), hi: rat(1, 2).into(), lo_closed: false, hi_closed: true };
        let b = curve_box(&cube(), &i).unwrap();
        let u1 = &b.intervals[1];
        assert_eq!(u1.lo, "sqrt(3)".parse().unwrap());
        assert_eq!(u1.hi, "sqrt(19)/2".parse().unwrap());
        assert!(!u1.lo_closed && u1.hi_closed);
        let u2 = &b.intervals[2];
        assert_eq!(u2.lo, "sqrt(8/3)".parse().unwrap());
        assert_eq!(u2.hi, "sqrt(3)".parse().unwrap());
        assert!(u2.lo_closed);
    }

    #[test]
    fn point_box() {
        let t = rat(1, 3);
        let b = curve_box(&cube(), &IntervalQ::closed_rational(t.clone(), t.clone())).unwrap();
        for (q, side) in cube().iter().zip(&b.intervals[1..]) {
            assert!(side.is_point());
            assert_eq!(side.lo, FieldElement::sqrt_rational(&q.eval(&t)));
        }
    }

    #[test]
    fn monotone_side_uses_endpoints() {
        let q = Quadratic::from_ints(3, 2, 3);
        let b = curve_box(&[q.clone()], &IntervalQ::closed_rational(rat(1, 4), rat(3, 4))).unwrap();
        assert_eq!(b.intervals[1].lo, FieldElement::sqrt_rational(&q.eval(&rat(1, 4))));
        assert_eq!(b.intervals[1].hi, FieldElement::sqrt_rational(&q.eval(&rat(3, 4))));
    }

    #[test]
    fn concave_component_peaks_inside() {
        let c = CurveComponent::Quadratic { c0: rat(0, 1), c1: rat(1, 1), c2: rat(-1, 1) };
        let r = c.range(&IntervalQ::open_rational(rat(0, 1), rat(1, 1))).unwrap();
        assert_eq!(r.lo, FieldElement::zero());
        assert!(!r.lo_closed);
        assert_eq!(r.hi, FieldElement::from_rational(rat(1, 4)));
        assert!(r.hi_closed);
    }
}
