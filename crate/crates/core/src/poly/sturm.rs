use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{IntervalQ, PolyError, UniPoly};
use crate::exact::{FieldElement, Rational, Sign};

/// `r / |lc(r)|`: same sign pattern everywhere, with much smaller coefficients.
fn normalized(r: &UniPoly) -> Result<UniPoly, PolyError> {
    let lc = r.lc();
    let s = lc.sign()?;
    let q = r.scale(&lc.inv()?);
    Ok(if s == Sign::Negative { -&q } else { q })
}

/// `p, p', -rem(p, p'), ...` until the remainder vanishes; from the third
/// term on, each element is rescaled by a positive constant.
pub fn sturm_sequence(p: &UniPoly) -> Result<Vec<UniPoly>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(seq);
    }
    seq.push(d);
    loop {
        let n = seq.len();
        if seq[n - 1].is_constant() {
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1])?.1;
        if r.is_zero() {
            break;
        }
        seq.push(normalized(&-&r)?);
    }
    Ok(seq)
}

/// Number of sign changes, skipping zeros.
pub fn sign_variations(values: &[FieldElement]) -> Result<usize, PolyError> {
    let mut last: Option<Sign> = None;
    let mut count = 0;
    for v in values {
        let s = v.sign()?;
        if s == Sign::Zero {
            continue;
        }
        if last.is_some_and(|l| l != s) {
            count += 1;
        }
        last = Some(s);
    }
    Ok(count)
}

fn variations_at(seq: &[UniPoly], x: &FieldElement) -> Result<usize, PolyError> {
    let values: Vec<FieldElement> = seq.iter().map(|q| q.eval(x)).collect();
    sign_variations(&values)
}

fn count_with(seq: &[UniPoly], lo: &FieldElement, hi: &FieldElement) -> Result<usize, PolyError> {
    let a = variations_at(seq, lo)?;
    let b = variations_at(seq, hi)?;
    Ok(a.saturating_sub(b))
}

fn check_endpoints(p: &UniPoly, i: &IntervalQ) -> Result<(), PolyError> {
    for e in [&i.lo, &i.hi] {
        if p.eval(e).is_zero() {
            return Err(PolyError::EndpointIsRoot { endpoint: e.to_string() });
        }
    }
    Ok(())
}

/// Distinct real roots of `p` strictly inside `i`; endpoints must not be roots.
pub fn count_roots(p: &UniPoly, i: &IntervalQ) -> Result<usize, PolyError> {
    check_endpoints(p, i)?;
    let seq = sturm_sequence(p)?;
    count_with(&seq, &i.lo, &i.hi)
}

/// Result of dividing endpoint roots out before counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deflated {
    pub poly: UniPoly,
    pub removed: Vec<FieldElement>,
    pub count: usize,
}

/// Counts roots in the open interval after removing factors `(x - e)` for
/// endpoints `e` that are roots.
pub fn count_roots_deflating(p: &UniPoly, i: &IntervalQ) -> Result<Deflated, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut q = p.clone();
    let mut removed = Vec::new();
    for e in [&i.lo, &i.hi] {
        while q.eval(e).is_zero() {
            q = q.exact_div(&UniPoly::linear_root(e))?;
            removed.push(e.clone());
        }
    }
    let count = count_roots(&q, i)?;
    Ok(Deflated { poly: q, removed, count })
}

/// A rational strictly between two real tower elements, near their midpoint.
pub fn rational_between(lo: &FieldElement, hi: &FieldElement) -> Result<Rational, PolyError> {
    if let (Some(a), Some(b)) = (lo.as_rational(), hi.as_rational()) {
        return Ok((a + b) / BigRational::from_integer(BigInt::from(2)));
    }
    let mid = (lo + hi).scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
    let mut bits = 16u64;
    loop {
        let (a, b) = mid.enclose(bits)?;
        let cand = (a + b) / BigRational::from_integer(BigInt::from(2));
        let c = FieldElement::from_rational(cand.clone());
        if (&c - lo).sign()? == Sign::Positive && (hi - &c).sign()? == Sign::Positive {
            return Ok(cand);
        }
        bits *= 2;
        if bits > 1 << 14 {
            return Err(PolyError::BadInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
    }
}

/// Shrinks an interval holding exactly one root until its width is at most `width`.
pub fn isolate_root(p: &UniPoly, i: &IntervalQ, width: &Rational) -> Result<IntervalQ, PolyError> {
    check_endpoints(p, i)?;
    let seq = sturm_sequence(p)?;
    let n = count_with(&seq, &i.lo, &i.hi)?;
    if n != 1 {
        return Err(PolyError::NoUniqueRoot { count: n });
    }
    let w = FieldElement::from_rational(width.clone());
    let (mut lo, mut hi) = (i.lo.clone(), i.hi.clone());
    while (&(&hi - &lo) - &w).sign()? == Sign::Positive {
        let m = FieldElement::from_rational(rational_between(&lo, &hi)?);
        if p.eval(&m).is_zero() {
            return Ok(IntervalQ::closed(m.clone(), m));
        }
        if count_with(&seq, &lo, &m)? == 1 {
            hi = m;
        } else {
            lo = m;
        }
    }
    Ok(IntervalQ::open(lo, hi))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn fe(s: &str) -> FieldElement {
        s.parse().unwrap()
    }

    #[test]
    fn sequences_match_hand_division() {
        let s = sturm_sequence(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(s, vec![UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[0, 2]), UniPoly::from_ints(&[1])]);
        let s = sturm_sequence(&UniPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(s, vec![UniPoly::from_ints(&[0, 0, 1]), UniPoly::from_ints(&[0, 2])]);
        let s = sturm_sequence(&UniPoly::from_ints(&[0, -3, 0, 1])).unwrap();
        assert_eq!(
            s,
            vec![
                UniPoly::from_ints(&[0, -3, 0, 1]),
                UniPoly::from_ints(&[-3, 0, 3]),
                UniPoly::from_ints(&[0, 1]),
                UniPoly::from_ints(&[1]),
            ]
        );
    }

    #[test]
    fn variations_skip_zeros() {
        let v = |xs: &[i64]| sign_variations(&xs.iter().map(|&x| FieldElement::from_int(x)).collect::<Vec<_>>()).unwrap();
        assert_eq!(v(&[1, -1, 1]), 2);
        assert_eq!(v(&[1, 0, 0, -2]), 1);
        assert_eq!(v(&[3, 0, 5, -1]), 1);
    }

    #[test]
    fn counts_and_endpoint_roots() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(count_roots(&p, &IntervalQ::open_rational(rat_int(-2), rat_int(2))).unwrap(), 2);
        let e = count_roots(&p, &IntervalQ::open_rational(rat_int(1), rat_int(2)));
        assert!(matches!(e, Err(PolyError::EndpointIsRoot { .. })));
        let d = count_roots_deflating(&p, &IntervalQ::open_rational(rat_int(-1), rat_int(2))).unwrap();
        assert_eq!((d.count, d.removed.len()), (1, 1));
    }

    #[test]
    fn isolates_known_roots() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let r = isolate_root(&p, &IntervalQ::open_rational(rat_int(1), rat_int(2)), &rat(1, 100)).unwrap();
        assert!(r.contains(&fe("sqrt(2)")).unwrap());
        assert!((r.width() - FieldElement::from_rational(rat(1, 100))).sign().unwrap() != Sign::Positive);

        // real root of x^3 - x - 1 to 50 digits: 1.3247179572447460259609088544780973407344040569017
        let p = UniPoly::from_ints(&[-1, -1, 0, 1]);
        let r = isolate_root(&p, &IntervalQ::open_rational(rat_int(1), rat_int(2)), &rat(1, 1000)).unwrap();
        let lo = r.lo.as_rational().unwrap();
        let hi = r.hi.as_rational().unwrap();
        let oracle = rat(13247179572447, 10_000_000_000_000);
        assert!(lo < oracle && oracle < hi);

        let p = UniPoly::linear_root(&fe("sqrt(3)"));
        let r = isolate_root(&p, &IntervalQ::open_rational(rat_int(1), rat_int(2)), &rat(1, 100)).unwrap();
        assert!(r.contains(&fe("sqrt(3)")).unwrap());

        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let e = isolate_root(&p, &IntervalQ::open_rational(rat_int(-2), rat_int(2)), &rat(1, 10));
        assert_eq!(e, Err(PolyError::NoUniqueRoot { count: 2 }));
    }

    #[test]
    fn irrational_endpoints() {
        let p = UniPoly::from_ints(&[-3, 0, 1]);
        let i = IntervalQ::open(fe("sqrt(2)"), &fe("sqrt(2)") + &fe("sqrt(3)"));
        assert_eq!(count_roots(&p, &i).unwrap(), 1);
        let m = rational_between(&i.lo, &i.hi).unwrap();
        assert!(i.contains(&FieldElement::from_rational(m)).unwrap());
    }
}
