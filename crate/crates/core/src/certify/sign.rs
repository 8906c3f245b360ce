use serde::{Deserialize, Serialize};

use super::covering::{cover_sign, covering_sign, open_unit, recheck, CoveringPiece, CurvePolynomial};
use super::CertifyError;
use crate::exact::{rat, FieldElement, Rational, Sign};
use crate::model::{laurent_lead, lift, reparametrize, Cleared, LaurentLead, LiftStyle, Quadratic, RadicalExpr, Side};
use crate::poly::{count_roots_deflating, IntervalQ, UniPoly};

/// Knobs shared by the sign certifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub max_depth: u32,
    pub style: LiftStyle,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { max_depth: 16, style: LiftStyle::RadicalPowers }
    }
}

/// Exact data backing a constant-sign claim on (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Numerator and denominator in the reparametrized variable have no roots inside the interval.
    SturmCount {
        radical: Option<Quadratic>,
        numerator: UniPoly,
        denominator: UniPoly,
        interval: IntervalQ,
        numerator_roots: usize,
        denominator_roots: usize,
    },
    /// The lifted numerator keeps one strict sign on every block of a covering.
    BoxCovering {
        style: LiftStyle,
        curve: CurvePolynomial,
        cleared: Vec<Cleared>,
        denominator_sign: Sign,
        pieces: Vec<CoveringPiece>,
    },
}

/// Certificate that `expression` has sign `sign` on all of (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub target: String,
    pub expression: RadicalExpr,
    pub sign: Sign,
    /// Sample point fixing which constant sign holds.
    pub sample: FieldElement,
    pub evidence: Evidence,
    /// Leading terms at `0+` and `1-`.
    pub limits: Vec<LaurentLead>,
    pub verified: bool,
}

impl SignCertificate {
    pub fn kind(&self) -> &'static str {
        match self.evidence {
            Evidence::SturmCount { .. } => "sturm-count",
            Evidence::BoxCovering { .. } => "box-covering",
        }
    }

    /// Re-derives the evidence from the stored expression and re-runs every check.
    pub fn replay(&self) -> Result<(), CertifyError> {
        let mismatch = |what: &str| Err(CertifyError::Replay(format!("{}: {what}", self.target)));
        let fresh = match &self.evidence {
            Evidence::SturmCount { numerator, denominator, interval, .. } => {
                for p in [numerator, denominator] {
                    if count_roots_deflating(p, interval)?.count != 0 {
                        return mismatch("stored polynomial has roots in the interval");
                    }
                }
                sturm_evidence(&self.expression)?
            }
            Evidence::BoxCovering { style, curve, pieces, .. } => {
                recheck(curve, pieces, &open_unit())?;
                let max_depth = pieces.iter().map(|p| p.depth).max().unwrap_or(0);
                covering_evidence(&self.expression, CertifyOptions { max_depth, style: *style })?
            }
        };
        if fresh != self.evidence {
            return mismatch("evidence differs from a fresh derivation");
        }
        let sample = self.sample.as_rational().ok_or(CertifyError::Replay("irrational sample".into()))?;
        if sign_at(&self.expression, &sample)? != self.sign || evidence_sign(&fresh, &self.expression)? != self.sign {
            return mismatch("sign differs");
        }
        if endpoint_limits(&self.expression)? != self.limits {
            return mismatch("endpoint limits differ");
        }
        Ok(())
    }
}

/// Certified sign of `e` at a rational point, by enclosure with growing precision.
pub fn sign_at(e: &RadicalExpr, t: &Rational) -> Result<Sign, CertifyError> {
    let mut bits = 64;
    while bits <= 4096 {
        if let Some(s) = e.enclose_at(t, bits)?.sign() {
            return Ok(s);
        }
        bits *= 4;
    }
    Ok(e.eval_rational(t)?.sign()?)
}

fn endpoint_limits(e: &RadicalExpr) -> Result<Vec<LaurentLead>, CertifyError> {
    Ok(vec![laurent_lead(e, &rat(0, 1), Side::Right)?, laurent_lead(e, &rat(1, 1), Side::Left)?])
}

fn sturm_evidence(e: &RadicalExpr) -> Result<Evidence, CertifyError> {
    let r = reparametrize(e)?;
    let n = count_roots_deflating(&r.num, &r.interval)?;
    let d = count_roots_deflating(&r.den, &r.interval)?;
    Ok(Evidence::SturmCount {
        radical: r.radical,
        numerator: r.num,
        denominator: r.den,
        interval: r.interval,
        numerator_roots: n.count,
        denominator_roots: d.count,
    })
}

fn covering_evidence(e: &RadicalExpr, opts: CertifyOptions) -> Result<Evidence, CertifyError> {
    let l = lift(e, opts.style)?;
    if !l.verify(e) {
        return Err(CertifyError::Replay("lift identity fails".into()));
    }
    let denominator_sign = l
        .denominator_sign()
        .ok_or_else(|| CertifyError::Replay("cleared denominator changes sign on (0, 1)".into()))?;
    let curve = CurvePolynomial::of_lift(&l);
    let pieces = cover_sign(&curve, &open_unit(), opts.max_depth)?;
    Ok(Evidence::BoxCovering { style: opts.style, curve, cleared: l.cleared, denominator_sign, pieces })
}

/// Sign implied by the evidence alone; sturm evidence only rules out sign changes.
fn evidence_sign(ev: &Evidence, e: &RadicalExpr) -> Result<Sign, CertifyError> {
    match ev {
        Evidence::SturmCount { numerator_roots, denominator_roots, .. } => {
            if *numerator_roots != 0 || *denominator_roots != 0 {
                return Err(CertifyError::RootFound { count: *numerator_roots });
            }
            sign_at(e, &rat(1, 2))
        }
        Evidence::BoxCovering { pieces, denominator_sign, .. } => {
            let s = covering_sign(pieces).ok_or(CertifyError::Replay("covering pieces disagree in sign".into()))?;
            Ok(s.times(*denominator_sign))
        }
    }
}

fn finish(
    target: &str,
    e: &RadicalExpr,
    evidence: Evidence,
    claimed: Option<Sign>,
) -> Result<SignCertificate, CertifyError> {
    let sign = evidence_sign(&evidence, e)?;
    let sample = rat(1, 2);
    if sign_at(e, &sample)? != sign {
        return Err(CertifyError::SignMismatch { expected: sign, found: sign_at(e, &sample)? });
    }
    if let Some(c) = claimed {
        if c != sign {
            return Err(CertifyError::SignMismatch { expected: c, found: sign });
        }
    }
    let limits = endpoint_limits(e)?;
    if let Some(l) = limits.iter().find(|l| l.sign != sign) {
        return Err(CertifyError::SignMismatch { expected: sign, found: l.sign });
    }
    Ok(SignCertificate {
        target: target.to_string(),
        expression: e.clone(),
        sign,
        sample: FieldElement::from_rational(sample),
        evidence,
        limits,
        verified: true,
    })
}

/// Constant sign on (0, 1) of a single-radical expression via reparametrization and Sturm counts.
pub fn certify_sign_univariate(
    target: &str,
    e: &RadicalExpr,
    claimed: Option<Sign>,
) -> Result<SignCertificate, CertifyError> {
    if e.is_zero() {
        return Err(CertifyError::IdenticallyZero);
    }
    let ev = sturm_evidence(e)?;
    if let Evidence::SturmCount { numerator_roots, denominator_roots, .. } = &ev {
        if *numerator_roots + *denominator_roots != 0 {
            return Err(CertifyError::RootFound { count: *numerator_roots });
        }
    }
    finish(target, e, ev, claimed)
}

/// Constant sign on (0, 1) via a lift and an adaptive box covering of the curve.
pub fn certify_sign_on_curve(
    target: &str,
    e: &RadicalExpr,
    claimed: Option<Sign>,
    opts: CertifyOptions,
) -> Result<SignCertificate, CertifyError> {
    if e.is_zero() {
        return Err(CertifyError::IdenticallyZero);
    }
    finish(target, e, covering_evidence(e, opts)?, claimed)
}

/// Picks the Sturm route for at most one radical and the covering route otherwise.
pub fn certify_sign(
    target: &str,
    e: &RadicalExpr,
    claimed: Option<Sign>,
    opts: CertifyOptions,
) -> Result<SignCertificate, CertifyError> {
    if e.radicals().len() <= 1 {
        certify_sign_univariate(target, e, claimed)
    } else {
        certify_sign_on_curve(target, e, claimed, opts)
    }
}

/// Reparametrized numerator and its interval, for Sturm evidence.
pub fn sturm_data(c: &SignCertificate) -> Option<(&UniPoly, &IntervalQ)> {
    match &c.evidence {
        Evidence::SturmCount { numerator, interval, .. } => Some((numerator, interval)),
        Evidence::BoxCovering { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Factor, RatFunc};

    fn q() -> Quadratic {
        Quadratic::from_ints(3, 2, 3)
    }

    #[test]
    fn positive_radical_expression() {
        // 1 / Q^(3/2) + 1/t > 0
        let e = &RadicalExpr::inv_radical_cube(&q()) + &RadicalExpr::rational(RatFunc::inv_factor(Factor::Lin(rat(0, 1)), 1));
        let c = certify_sign_univariate("sample", &e, Some(Sign::Positive)).unwrap();
        assert_eq!(c.kind(), "sturm-count");
        c.replay().unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: SignCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn sign_change_is_reported() {
        let e = &RadicalExpr::t() - &RadicalExpr::rational(RatFunc::constant(FieldElement::from_rational(rat(1, 3))));
        assert!(matches!(certify_sign_univariate("t - 1/3", &e, None), Err(CertifyError::RootFound { count: 1 })));
        let two = &RadicalExpr::radical(&q()) + &RadicalExpr::radical(&Quadratic::from_ints(3, -2, 3));
        let e = &two - &RadicalExpr::from_int(4);
        let opts = CertifyOptions { max_depth: 6, ..Default::default() };
        assert!(matches!(certify_sign_on_curve("s", &e, None, opts), Err(CertifyError::DepthExceeded { .. })));
    }

    #[test]
    fn both_routes_agree() {
        let e = &RadicalExpr::radical(&q()) - &RadicalExpr::t();
        let a = certify_sign_univariate("e", &e, None).unwrap();
        let b = certify_sign_on_curve("e", &e, None, CertifyOptions::default()).unwrap();
        assert_eq!(a.sign, Sign::Positive);
        assert_eq!(b.sign, Sign::Positive);
        assert_eq!(b.kind(), "box-covering");
        b.replay().unwrap();
    }

    #[test]
    fn claimed_sign_checked() {
        let e = RadicalExpr::radical(&q());
        assert!(matches!(
            certify_sign_univariate("e", &e, Some(Sign::Negative)),
            Err(CertifyError::SignMismatch { .. })
        ));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let e = &RadicalExpr::radical(&q()) - &RadicalExpr::t();
        let mut c = certify_sign_on_curve("e", &e, None, CertifyOptions::default()).unwrap();
        if let Evidence::BoxCovering { pieces, .. } = &mut c.evidence {
            pieces[0].sign = Sign::Negative;
        }
        assert!(c.replay().is_err());
    }
}
