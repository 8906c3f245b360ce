use std::fmt;

use serde::{Deserialize, Serialize};

use super::PolyError;
use crate::exact::{FieldElement, Rational, Sign};

/// Real interval with exact tower-element endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalQ {
    pub lo: FieldElement,
    pub hi: FieldElement,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl IntervalQ {
    pub fn new(lo: FieldElement, hi: FieldElement, lo_closed: bool, hi_closed: bool) -> Result<Self, PolyError> {
        if (&hi - &lo).sign()? == Sign::Negative {
            return Err(PolyError::BadInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(IntervalQ { lo, hi, lo_closed, hi_closed })
    }

    pub fn open(lo: FieldElement, hi: FieldElement) -> Self {
        IntervalQ { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn closed(lo: FieldElement, hi: FieldElement) -> Self {
        IntervalQ { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open_rational(lo: Rational, hi: Rational) -> Self {
        Self::open(lo.into(), hi.into())
    }

    pub fn closed_rational(lo: Rational, hi: Rational) -> Self {
        Self::closed(lo.into(), hi.into())
    }

    /// The open unit interval `(0, 1)`.
    pub fn unit() -> Self {
        Self::open(FieldElement::zero(), FieldElement::one())
    }

    pub fn width(&self) -> FieldElement {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool, PolyError> {
        let a = (x - &self.lo).sign()?;
        let b = (&self.hi - x).sign()?;
        let lo_ok = a == Sign::Positive || (a == Sign::Zero && self.lo_closed);
        let hi_ok = b == Sign::Positive || (b == Sign::Zero && self.hi_closed);
        Ok(lo_ok && hi_ok)
    }

    /// Splits at `m`, closing both halves at the cut.
    pub fn split_at(&self, m: &FieldElement) -> (IntervalQ, IntervalQ) {
        (
            IntervalQ { lo: self.lo.clone(), hi: m.clone(), lo_closed: self.lo_closed, hi_closed: true },
            IntervalQ { lo: m.clone(), hi: self.hi.clone(), lo_closed: true, hi_closed: self.hi_closed },
        )
    }

    pub fn rational_ends(&self) -> Option<(Rational, Rational)> {
        Some((self.lo.as_rational()?, self.hi.as_rational()?))
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Product of intervals, one per polynomial variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxQ {
    pub intervals: Vec<IntervalQ>,
}

impl BoxQ {
    pub fn new(intervals: Vec<IntervalQ>) -> Self {
        BoxQ { intervals }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, point: &[FieldElement]) -> Result<bool, PolyError> {
        if point.len() != self.dim() {
            return Err(PolyError::DimensionMismatch { expected: self.dim(), got: point.len() });
        }
        for (i, x) in self.intervals.iter().zip(point) {
            if !i.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for BoxQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}
