use rayon::join;
use serde::{Deserialize, Serialize};

use super::CertifyError;
use crate::exact::{rat_int, FieldElement, Sign};
use crate::model::{component_box, CurveComponent, Lift};
use crate::poly::{coefficient_sign_test, mobius_coefficients, oriented_ends, rational_between, BoxQ, IntervalQ, MultiPoly, SignTest};

/// A polynomial to be signed along a parametrized curve `g(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePolynomial {
    pub poly: MultiPoly,
    pub components: Vec<CurveComponent>,
}

impl CurvePolynomial {
    pub fn new(poly: MultiPoly, components: Vec<CurveComponent>) -> Result<Self, CertifyError> {
        if poly.nvars() != components.len() {
            return Err(CertifyError::Shape(format!(
                "{} variables for a curve with {} components",
                poly.nvars(),
                components.len()
            )));
        }
        Ok(CurvePolynomial { poly, components })
    }

    /// The lifted numerator along `(t, sqrt(Q_1(t)), ...)`.
    pub fn of_lift(l: &Lift) -> Self {
        let mut components = vec![CurveComponent::Identity];
        components.extend(l.radicals.iter().cloned().map(CurveComponent::Sqrt));
        CurvePolynomial { poly: l.numerator.clone(), components }
    }

    pub fn block(&self, i: &IntervalQ) -> Result<BoxQ, CertifyError> {
        Ok(component_box(&self.components, i)?)
    }

    /// Möbius-restricted coefficients on the block over `i`.
    pub fn restricted(&self, i: &IntervalQ) -> Result<(BoxQ, MultiPoly), CertifyError> {
        let region = self.block(i)?;
        let q = mobius_coefficients(&self.poly, &region)?;
        Ok((region, q))
    }

    /// Coefficient sign test on the block over `i`.
    pub fn test_block(&self, i: &IntervalQ) -> Result<(BoxQ, SignTest), CertifyError> {
        let (region, q) = self.restricted(i)?;
        let closed: Vec<bool> = region.intervals.iter().map(|s| oriented_ends(s).2).collect();
        let test = coefficient_sign_test(&q, &self.poly.degrees(), &closed)?;
        Ok((region, test))
    }
}

/// One block of a covering on which the restricted polynomial has a certified sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringPiece {
    pub interval: IntervalQ,
    pub region: BoxQ,
    pub depth: u32,
    pub sign: Sign,
}

/// Splits `i` at a rational near its midpoint into `(lo, m]` and `[m, hi)`.
pub fn bisect(i: &IntervalQ) -> Result<(IntervalQ, IntervalQ), CertifyError> {
    let m = FieldElement::from_rational(rational_between(&i.lo, &i.hi)?);
    Ok(i.split_at(&m))
}

fn cover(p: &CurvePolynomial, interval: IntervalQ, depth: u32, max_depth: u32) -> Result<Vec<CoveringPiece>, CertifyError> {
    let (region, test) = p.test_block(&interval)?;
    if let Some(sign) = test.sign {
        return Ok(vec![CoveringPiece { interval, region, depth, sign }]);
    }
    if depth >= max_depth {
        return Err(CertifyError::DepthExceeded { interval: interval.to_string() });
    }
    let (l, r) = bisect(&interval)?;
    let (a, b) = join(|| cover(p, l, depth + 1, max_depth), || cover(p, r, depth + 1, max_depth));
    let mut out = a?;
    out.extend(b?);
    Ok(out)
}

/// Adaptive bisection of `domain` until every block passes the sign test.
pub fn cover_sign(p: &CurvePolynomial, domain: &IntervalQ, max_depth: u32) -> Result<Vec<CoveringPiece>, CertifyError> {
    cover(p, domain.clone(), 0, max_depth)
}

/// Checks a given partition without refining it.
pub fn certify_partition(p: &CurvePolynomial, parts: &[IntervalQ]) -> Result<Vec<CoveringPiece>, CertifyError> {
    parts
        .iter()
        .map(|i| {
            let (region, test) = p.test_block(i)?;
            let sign = test.sign.ok_or_else(|| CertifyError::DepthExceeded { interval: i.to_string() })?;
            Ok(CoveringPiece { interval: i.clone(), region, depth: 0, sign })
        })
        .collect()
}

/// Whether the piece intervals tile `domain` in order, with no gaps.
pub fn tiles(pieces: &[CoveringPiece], domain: &IntervalQ) -> bool {
    let (Some(first), Some(last)) = (pieces.first(), pieces.last()) else {
        return false;
    };
    let ends = first.interval.lo == domain.lo
        && first.interval.lo_closed == domain.lo_closed
        && last.interval.hi == domain.hi
        && last.interval.hi_closed == domain.hi_closed;
    ends && pieces.windows(2).all(|w| w[0].interval.hi == w[1].interval.lo && (w[0].interval.hi_closed || w[1].interval.lo_closed))
}

/// Re-runs the sign test on every stored piece.
pub fn recheck(p: &CurvePolynomial, pieces: &[CoveringPiece], domain: &IntervalQ) -> Result<(), CertifyError> {
    if !tiles(pieces, domain) {
        return Err(CertifyError::Replay(format!("pieces do not tile {domain}")));
    }
    for piece in pieces {
        let (region, test) = p.test_block(&piece.interval)?;
        if region != piece.region || test.sign != Some(piece.sign) {
            return Err(CertifyError::Replay(format!("block over {} fails the sign test", piece.interval)));
        }
    }
    covering_sign(pieces).ok_or_else(|| CertifyError::Replay(format!("covering of {domain} changes sign")))?;
    Ok(())
}

/// The common sign of a covering, if its pieces agree.
pub fn covering_sign(pieces: &[CoveringPiece]) -> Option<Sign> {
    let s = pieces.first()?.sign;
    pieces.iter().all(|p| p.sign == s).then_some(s)
}

pub fn open_unit() -> IntervalQ {
    IntervalQ::open_rational(rat_int(0), rat_int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::poly::Exponent;

    /// `v - 3u` along `(t, t^2 + 1)`.
    fn parabola() -> CurvePolynomial {
        let vars = vec!["u".to_string(), "v".to_string()];
        let mut p = MultiPoly::zero(vars);
        p.add_term(Exponent(vec![0, 1]), FieldElement::one());
        p.add_term(Exponent(vec![1, 0]), FieldElement::from_int(-3));
        let comps = vec![
            CurveComponent::Identity,
            CurveComponent::Quadratic { c0: rat(1, 1), c1: rat(0, 1), c2: rat(1, 1) },
        ];
        CurvePolynomial::new(p, comps).unwrap()
    }

    #[test]
    fn refinement_finds_covering() {
        let p = parabola();
        let half = IntervalQ::closed_rational(rat(0, 1), rat(1, 4));
        assert_eq!(p.test_block(&half).unwrap().1.sign, Some(Sign::Positive));
        let whole = IntervalQ::closed_rational(rat(0, 1), rat(1, 1));
        assert_eq!(p.test_block(&whole).unwrap().1.sign, None);
        // v - 3u = t^2 - 3t + 1 changes sign at (3 - sqrt 5)/2.
        assert!(matches!(cover_sign(&p, &whole, 6), Err(CertifyError::DepthExceeded { .. })));
        let left = IntervalQ::closed_rational(rat(0, 1), rat(1, 4));
        let pieces = cover_sign(&p, &left, 4).unwrap();
        assert_eq!(covering_sign(&pieces), Some(Sign::Positive));
    }

    #[test]
    fn shape_mismatch() {
        let p = parabola();
        assert!(CurvePolynomial::new(p.poly, vec![CurveComponent::Identity]).is_err());
    }
}
