use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::covering::{cover_sign, covering_sign, recheck, CoveringPiece, CurvePolynomial};
use super::det::det_affine;
use super::sign::{sign_at, CertifyOptions};
use super::CertifyError;
use crate::exact::{ceil_decimal, floor_decimal, rat, rat_int, FieldElement, Rational, Sign};
use crate::model::{laurent_lead, lift, reparametrize, Decomposition, LiftStyle, NamedBlock, RadicalExpr, Side};
use crate::poly::{count_roots_deflating, IntervalQ, UniPoly};

/// The 2x2 block on the trivial isotypic component.
pub fn principal_block(d: &Decomposition) -> Result<&NamedBlock, CertifyError> {
    d.blocks
        .iter()
        .find(|b| b.irrep == 0 && b.rows == 2 && b.cols == 2)
        .ok_or_else(|| CertifyError::Shape("no 2x2 block on the trivial irrep".into()))
}

/// `c(t) = -alpha_0 / alpha_1` and the mass ratio `-M_12 / M_11` at a rational `t0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassRatio {
    pub t: FieldElement,
    pub c: FieldElement,
    pub ratio: FieldElement,
    pub c_enclosure: (String, String),
    pub ratio_enclosure: (String, String),
    pub sign: Sign,
}

/// Outward decimal rounding of an exact real value.
pub fn decimal_enclosure(x: &FieldElement, digits: u32) -> Result<(String, String), CertifyError> {
    let width = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(digits + 2));
    let (lo, hi) = x.enclose_within(&width)?;
    Ok((floor_decimal(&lo, digits), ceil_decimal(&hi, digits)))
}

pub fn mass_ratio_at(block: &NamedBlock, t0: &Rational) -> Result<MassRatio, CertifyError> {
    if *t0 <= Rational::zero() || *t0 >= Rational::one() {
        return Err(CertifyError::Shape(format!("t0 = {t0} outside (0, 1)")));
    }
    let (a1, a0) = det_affine(&block.matrix)?;
    let c = (-a0.eval_rational(t0)?).checked_div(&a1.eval_rational(t0)?)?;
    let m11 = block.matrix.get(0, 0).eval(&c, t0)?;
    let m12 = block.matrix.get(0, 1).eval(&c, t0)?;
    if m11.is_zero() {
        return Err(CertifyError::DenominatorZero(t0.to_string()));
    }
    let ratio = (-m12).checked_div(&m11)?;
    Ok(MassRatio {
        t: FieldElement::from_rational(t0.clone()),
        c_enclosure: decimal_enclosure(&c, 12)?,
        ratio_enclosure: decimal_enclosure(&ratio, 12)?,
        sign: ratio.sign()?,
        c,
        ratio,
    })
}

/// `f = A alpha_1 - B alpha_0` where `M_12 = A + c B`, so `M_12(c(t), t) = f / alpha_1`.
pub fn threshold_numerator(block: &NamedBlock) -> Result<RadicalExpr, CertifyError> {
    let (a1, a0) = det_affine(&block.matrix)?;
    let m12 = block.matrix.get(0, 1);
    Ok(&(&m12.coeff(0) * &a1) - &(&m12.coeff(1) * &a0))
}

/// Why the isolated root is the only zero of `f` on (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Uniqueness {
    /// One distinct root of the reparametrized numerator; the denominator has none.
    Sturm { numerator: UniPoly, interval: IntervalQ, roots: usize },
    /// `f` keeps one sign left and right of `bracket`, and `f'` keeps one sign on it.
    Monotone {
        style: LiftStyle,
        bracket: IntervalQ,
        function: CurvePolynomial,
        left: Vec<CoveringPiece>,
        right: Vec<CoveringPiece>,
        derivative: CurvePolynomial,
        inside: Vec<CoveringPiece>,
    },
}

/// Enclosure of the threshold `delta` where the mass ratio changes sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta {
    pub block: String,
    pub numerator: RadicalExpr,
    pub lo: FieldElement,
    pub hi: FieldElement,
    /// `1/delta` rounded outward to the requested digits.
    pub reciprocal: (String, String),
    /// Sign of `f` just right of 0.
    pub left_sign: Sign,
    pub uniqueness: Uniqueness,
    pub verified: bool,
}

impl Delta {
    /// Re-checks the sign change, the uniqueness argument and the rounded reciprocal.
    pub fn replay(&self) -> Result<(), CertifyError> {
        let fail = |m: &str| Err(CertifyError::Replay(format!("delta for {}: {m}", self.block)));
        let f = &self.numerator;
        let (lo, hi) = (self.lo.to_rational()?, self.hi.to_rational()?);
        if laurent_lead(f, &rat(0, 1), Side::Right)?.sign != self.left_sign {
            return fail("sign near 0 differs");
        }
        if lo == hi {
            if sign_at(f, &lo)? != Sign::Zero {
                return fail("point enclosure is not a root");
            }
        } else if sign_at(f, &lo)? != self.left_sign || sign_at(f, &hi)? != self.left_sign.flip() {
            return fail("no sign change across the enclosure");
        }
        match &self.uniqueness {
            Uniqueness::Sturm { numerator, interval, roots } => {
                if sturm_uniqueness(f)? != self.uniqueness || count_roots_deflating(numerator, interval)?.count != *roots {
                    return fail("Sturm data differs");
                }
            }
            Uniqueness::Monotone { style, bracket, function, left, right, derivative, inside } => {
                let (a, b) = (bracket.lo.to_rational()?, bracket.hi.to_rational()?);
                if lo < a || hi > b {
                    return fail("enclosure leaves the bracket");
                }
                if *function != CurvePolynomial::of_lift(&lift(f, *style)?)
                    || *derivative != CurvePolynomial::of_lift(&lift(&f.derivative(), *style)?)
                {
                    return fail("lifted polynomials differ");
                }
                let zero = FieldElement::zero();
                recheck(function, left, &IntervalQ { lo: zero, hi: bracket.lo.clone(), lo_closed: false, hi_closed: true })?;
                recheck(function, right, &IntervalQ { lo: bracket.hi.clone(), hi: FieldElement::one(), lo_closed: true, hi_closed: false })?;
                recheck(derivative, inside, bracket)?;
            }
        }
        let digits = self.reciprocal.0.split('.').nth(1).map_or(0, |d| d.len() as u32);
        if (floor_decimal(&hi.recip(), digits), ceil_decimal(&lo.recip(), digits)) != self.reciprocal {
            return fail("rounded reciprocal differs");
        }
        Ok(())
    }

    pub fn reciprocal_midpoint(&self) -> Result<Rational, CertifyError> {
        let lo = self.lo.to_rational()?;
        let hi = self.hi.to_rational()?;
        Ok((lo.recip() + hi.recip()) / rat_int(2))
    }
}

/// Shrinks `[lo, hi]` around a sign change of `f` until `1/lo - 1/hi <= 10^-digits`.
fn refine(f: &RadicalExpr, mut lo: Rational, mut hi: Rational, left: Sign, digits: u32) -> Result<(Rational, Rational), CertifyError> {
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(digits + 1));
    while lo.is_zero() || lo.recip() - hi.recip() > tol {
        let m = (&lo + &hi) / rat_int(2);
        match sign_at(f, &m)? {
            Sign::Zero => return Ok((m.clone(), m)),
            s if s == left => lo = m,
            _ => hi = m,
        }
    }
    Ok((lo, hi))
}

/// Dyadic bracket `[k/2^level, (k+1)/2^level]` on which `f` changes sign.
fn dyadic_bracket(f: &RadicalExpr, left: Sign, level: u32) -> Result<(Rational, Rational), CertifyError> {
    let n = 1i64 << level;
    let (mut lo, mut hi) = (0, n);
    while hi - lo > 1 {
        let m = (lo + hi) / 2;
        match sign_at(f, &rat(m, n))? {
            s if s == left => lo = m,
            _ => hi = m,
        }
    }
    Ok((rat(lo, n), rat(hi, n)))
}

fn sturm_uniqueness(f: &RadicalExpr) -> Result<Uniqueness, CertifyError> {
    let r = reparametrize(f)?;
    let roots = count_roots_deflating(&r.num, &r.interval)?.count;
    let poles = count_roots_deflating(&r.den, &r.interval)?.count;
    if roots != 1 || poles != 0 {
        return Err(CertifyError::RootFound { count: roots });
    }
    Ok(Uniqueness::Sturm { numerator: r.num, interval: r.interval, roots })
}

fn signed_covering(p: &CurvePolynomial, domain: &IntervalQ, depth: u32) -> Result<Vec<CoveringPiece>, CertifyError> {
    let pieces = cover_sign(p, domain, depth)?;
    covering_sign(&pieces).ok_or_else(|| CertifyError::Replay(format!("covering of {domain} changes sign")))?;
    Ok(pieces)
}

fn monotone_uniqueness(f: &RadicalExpr, opts: CertifyOptions) -> Result<Uniqueness, CertifyError> {
    let function = CurvePolynomial::of_lift(&lift(f, opts.style)?);
    let derivative = CurvePolynomial::of_lift(&lift(&f.derivative(), opts.style)?);
    let left_sign = laurent_lead(f, &rat(0, 1), Side::Right)?.sign;
    let mut last = None;
    for level in 3..=7 {
        let (a, b) = dyadic_bracket(f, left_sign, level)?;
        let attempt = (|| -> Result<Uniqueness, CertifyError> {
            let zero = FieldElement::zero();
            let fa = FieldElement::from_rational(a.clone());
            let fb = FieldElement::from_rational(b.clone());
            let left = signed_covering(&function, &IntervalQ { lo: zero, hi: fa.clone(), lo_closed: false, hi_closed: true }, opts.max_depth)?;
            let right = signed_covering(&function, &IntervalQ { lo: fb.clone(), hi: FieldElement::one(), lo_closed: true, hi_closed: false }, opts.max_depth)?;
            let bracket = IntervalQ::closed(fa, fb);
            let inside = signed_covering(&derivative, &bracket, opts.max_depth)?;
            Ok(Uniqueness::Monotone { style: opts.style, bracket, function: function.clone(), left, right, derivative: derivative.clone(), inside })
        })();
        match attempt {
            Ok(u) => return Ok(u),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one level tried"))
}

/// Isolates the unique zero `delta` of the threshold numerator on (0, 1).
pub fn find_delta(block: &NamedBlock, digits: u32, opts: CertifyOptions) -> Result<Delta, CertifyError> {
    let f = threshold_numerator(block)?;
    let uniqueness = if f.radicals().len() <= 1 { sturm_uniqueness(&f)? } else { monotone_uniqueness(&f, opts)? };
    let left = laurent_lead(&f, &rat(0, 1), Side::Right)?.sign;
    let right = laurent_lead(&f, &rat(1, 1), Side::Left)?.sign;
    if left == right {
        return Err(CertifyError::SignMismatch { expected: left.flip(), found: right });
    }
    let (lo, hi) = match &uniqueness {
        Uniqueness::Monotone { bracket, .. } => (bracket.lo.to_rational()?, bracket.hi.to_rational()?),
        Uniqueness::Sturm { .. } => (rat(0, 1), rat(1, 1)),
    };
    let (lo, hi) = refine(&f, lo, hi, left, digits)?;
    let reciprocal = (floor_decimal(&hi.recip(), digits), ceil_decimal(&lo.recip(), digits));
    Ok(Delta {
        block: block.name.clone(),
        numerator: f,
        lo: FieldElement::from_rational(lo),
        hi: FieldElement::from_rational(hi),
        reciprocal,
        left_sign: left,
        uniqueness,
        verified: true,
    })
}
