use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{coprime_base, square_free_split, Monomial};
use super::{ExactError, Rational};

const START_BITS: u64 = 64;
const MAX_BITS: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn of_rational(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        Sign::from_i8(-self.to_i8())
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_i8(self.to_i8() * other.to_i8())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Element of a multi-quadratic extension of Q, possibly containing `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: BTreeMap<Monomial, BigRational>,
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_term(Monomial::one(), r)
    }

    pub fn from_term(m: Monomial, c: BigRational) -> Self {
        let mut coords = BTreeMap::new();
        if !c.is_zero() {
            coords.insert(m, c);
        }
        FieldElement { coords }
    }

    pub fn from_coords<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut out = FieldElement::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    pub fn i() -> Self {
        Self::from_term(Monomial { imag: true, root: BigUint::one() }, BigRational::one())
    }

    /// The principal square root of a rational (`i*sqrt(|r|)` when `r < 0`).
    pub fn sqrt_rational(r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let prod = (r.numer() * r.denom()).abs().to_biguint().expect("nonnegative");
        let (outer, kernel) = square_free_split(&prod);
        let coef = BigRational::new(BigInt::from(outer), r.denom().abs());
        Self::from_term(Monomial { imag: r.is_negative(), root: kernel }, coef)
    }

    pub fn coords(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coords.len() == 1
            && self.coords.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    pub fn is_rational(&self) -> bool {
        self.coords.keys().all(Monomial::is_one)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coords.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.coords.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn to_rational(&self) -> Result<Rational, ExactError> {
        self.as_rational().ok_or_else(|| ExactError::NotRational(self.to_string()))
    }

    pub fn is_real(&self) -> bool {
        self.coords.keys().all(|m| !m.imag)
    }

    /// Canonical form is maintained by every operation; this returns a copy.
    pub fn normalize(&self) -> Self {
        self.clone()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.coords.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.coords.remove(&m);
                }
            }
            None => {
                self.coords.insert(m, c);
            }
        }
    }

    pub fn re(&self) -> Self {
        FieldElement { coords: self.coords.iter().filter(|(m, _)| !m.imag).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Imaginary part as a real element.
    pub fn im(&self) -> Self {
        FieldElement {
            coords: self
                .coords
                .iter()
                .filter(|(m, _)| m.imag)
                .map(|(m, c)| (Monomial { imag: false, root: m.root.clone() }, c.clone()))
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        FieldElement {
            coords: self.coords.iter().map(|(m, c)| (m.clone(), if m.imag { -c } else { c.clone() })).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        FieldElement { coords: self.coords.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Square-free radicands of the generators needed to express `self`.
    fn generators(&self) -> (bool, Vec<BigUint>) {
        let roots: Vec<BigUint> = self.coords.keys().map(|m| m.root.clone()).collect();
        (self.coords.keys().any(|m| m.imag), coprime_base(&roots))
    }

    fn flip_where<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Self {
        FieldElement {
            coords: self.coords.iter().map(|(m, c)| (m.clone(), if pred(m) { -c } else { c.clone() })).collect(),
        }
    }

    /// Multiplicative inverse by successive conjugation over each generator.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let mut x = self.clone();
        let mut acc = Self::one();
        loop {
            if let Some(r) = x.as_rational() {
                return Ok(acc.scale(&r.recip()));
            }
            let (imag, base) = x.generators();
            let conj = if imag {
                x.flip_where(|m| m.imag)
            } else {
                let b = base.first().expect("irrational element has a generator").clone();
                x.flip_where(|m| m.contains(&b))
            };
            acc = &acc * &conj;
            x = &x * &conj;
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.inv()?)
    }

    /// Integer-scaled rational enclosure `[lo, hi]` of a real element.
    pub fn enclose(&self, bits: u64) -> Result<(Rational, Rational), ExactError> {
        if !self.is_real() {
            return Err(ExactError::NotReal(self.to_string()));
        }
        let lcm = self.coords.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        let scale = BigUint::one() << (2 * bits);
        for (m, c) in &self.coords {
            let n = c.numer() * (&lcm / c.denom());
            let target = &m.root * &scale;
            let s = target.sqrt();
            let exact = &s * &s == target;
            let s_lo = BigInt::from(s);
            let s_hi = if exact { s_lo.clone() } else { &s_lo + 1 };
            if n.sign() == BigSign::Minus {
                lo += &n * &s_hi;
                hi += &n * &s_lo;
            } else {
                lo += &n * &s_lo;
                hi += &n * &s_hi;
            }
        }
        let den = lcm << bits;
        Ok((BigRational::new(lo, den.clone()), BigRational::new(hi, den)))
    }

    /// Certified sign of a real element.
    pub fn sign(&self) -> Result<Sign, ExactError> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if !self.is_real() {
            return Err(ExactError::NotReal(self.to_string()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Sign::of_rational(&r));
        }
        let mut bits = START_BITS;
        while bits <= MAX_BITS {
            let (lo, hi) = self.enclose(bits)?;
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
            bits *= 2;
        }
        Err(ExactError::Undecided(self.to_string()))
    }

    /// Enclosure of width at most `width`.
    pub fn enclose_within(&self, width: &Rational) -> Result<(Rational, Rational), ExactError> {
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.enclose(bits)?;
            if &(&hi - &lo) <= width || bits >= 8 * MAX_BITS {
                return Ok((lo, hi));
            }
            bits *= 2;
        }
    }

    /// Floating-point approximation of the real part.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (lo, hi) = self.re().enclose(64).expect("real part");
        ((lo + hi) / BigRational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_real(&self, other: &Self) -> Result<std::cmp::Ordering, ExactError> {
        Ok(match (self - other).sign()? {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        })
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::from_rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        for (m, c) in &rhs.coords {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        for (m, c) in &rhs.coords {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let mut out = FieldElement::zero();
        for (ma, ca) in &self.coords {
            for (mb, cb) in &rhs.coords {
                let (k, m) = ma.mul(mb);
                out.add_term(m, ca * cb * BigRational::from_integer(k));
            }
        }
        out
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero field element")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { coords: self.coords.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $f(self, rhs: FieldElement) -> FieldElement {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $f(self, rhs: &FieldElement) -> FieldElement {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $f(self, rhs: FieldElement) -> FieldElement {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::one()
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::zero(), |a, b| a + b)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.coords.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
