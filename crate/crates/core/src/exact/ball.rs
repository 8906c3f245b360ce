use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{ExactError, FieldElement, Rational, Sign};

/// Closed rational interval with dyadic endpoints rounded outward to `bits` fractional bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub lo: Rational,
    pub hi: Rational,
    bits: u64,
}

fn round(x: &Rational, bits: u64, up: bool) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    Rational::new(n, scale)
}

impl Ball {
    pub fn point(x: &Rational, bits: u64) -> Self {
        Ball { lo: round(x, bits, false), hi: round(x, bits, true), bits }
    }

    pub fn new(lo: Rational, hi: Rational, bits: u64) -> Self {
        debug_assert!(lo <= hi);
        Ball { lo: round(&lo, bits, false), hi: round(&hi, bits, true), bits }
    }

    pub fn of(x: &FieldElement, bits: u64) -> Result<Self, ExactError> {
        let (lo, hi) = x.enclose(bits + 4)?;
        Ok(Ball::new(lo, hi, bits))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if the enclosure excludes zero (or is exactly zero).
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Ball, ExactError> {
        if self.contains_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Ball::new(self.hi.recip(), self.lo.recip(), self.bits))
    }

    pub fn sqrt(&self) -> Result<Ball, ExactError> {
        if self.lo.is_negative() {
            return Err(ExactError::NotReal(format!("sqrt of [{}, {}]", self.lo, self.hi)));
        }
        let isqrt = |x: &Rational, up: bool| -> Rational {
            // floor/ceil of sqrt(x) * 2^bits
            let scale = BigInt::one() << (2 * self.bits);
            let y = x * Rational::from_integer(scale);
            let n: BigUint = if up { y.ceil() } else { y.floor() }.to_integer().to_biguint().unwrap_or_default();
            let s = n.sqrt();
            let s = if up && &s * &s != n { s + 1u32 } else { s };
            Rational::new(BigInt::from(s), BigInt::one() << self.bits)
        };
        Ok(Ball { lo: isqrt(&self.lo, false), hi: isqrt(&self.hi, true), bits: self.bits })
    }

    pub fn powi(&self, k: u32) -> Ball {
        (0..k).fold(Ball::point(&Rational::one(), self.bits), |acc, _| &acc * self)
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }
}

impl<'a> Add<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        Ball::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi, self.bits.max(rhs.bits))
    }
}

impl<'a> Sub<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        Ball::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo, self.bits.max(rhs.bits))
    }
}

impl<'a> Mul<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = c.iter().min().expect("nonempty").clone();
        let hi = c.iter().max().expect("nonempty").clone();
        Ball::new(lo, hi, self.bits.max(rhs.bits))
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn sqrt_two_enclosure() {
        let b = Ball::point(&rat(2, 1), 64).sqrt().unwrap();
        let s = FieldElement::sqrt_rational(&rat(2, 1));
        let (lo, hi) = s.enclose(80).unwrap();
        assert!(b.lo <= lo && hi <= b.hi);
        assert!(b.width() < rat(1, 1 << 60));
    }

    #[test]
    fn sign_of_product() {
        let a = Ball::point(&rat(-1, 3), 32);
        let b = Ball::point(&rat(2, 7), 32);
        assert_eq!((&a * &b).sign(), Some(Sign::Negative));
        assert!((&a - &a).contains_zero());
    }
}
