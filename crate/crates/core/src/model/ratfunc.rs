use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;
use crate::exact::{parse_rational, FieldElement, Rational, Sign};
use crate::poly::UniPoly;

/// Primitive integer quadratic `a t^2 + b t + c` with `a > 0` and negative discriminant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quadratic {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Quadratic {
    /// Splits `a t^2 + b t + c = k * Q` with `Q` primitive and `k > 0`.
    pub fn primitive(a: &Rational, b: &Rational, c: &Rational) -> Result<(Rational, Quadratic), ModelError> {
        let den = a.denom().lcm(b.denom()).lcm(c.denom());
        let to_int = |x: &Rational| (x * Rational::from_integer(den.clone())).to_integer();
        let (ia, ib, ic) = (to_int(a), to_int(b), to_int(c));
        let g = ia.gcd(&ib).gcd(&ic);
        if g.is_zero() || !ia.is_positive() {
            return Err(ModelError::Unsupported(format!("quadratic {a} t^2 + {b} t + {c}")));
        }
        let q = Quadratic { a: &ia / &g, b: &ib / &g, c: &ic / &g };
        if !q.discriminant().is_negative() {
            return Err(ModelError::Unsupported(format!("quadratic {q} has real roots")));
        }
        Ok((Rational::new(g, den), q))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::primitive(&Rational::from_integer(a.into()), &Rational::from_integer(b.into()), &Rational::from_integer(c.into()))
            .expect("valid quadratic")
            .1
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn poly(&self) -> UniPoly {
        UniPoly::from_rationals(&[self.c.clone().into(), self.b.clone().into(), self.a.clone().into()])
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (Rational::from_integer(self.a.clone()) * t + Rational::from_integer(self.b.clone())) * t
            + Rational::from_integer(self.c.clone())
    }

    /// Abscissa of the vertex, `-b / 2a`.
    pub fn vertex(&self) -> Rational {
        Rational::new(-self.b.clone(), BigInt::from(2) * &self.a)
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = UniPoly::from_rationals(&[self.c.clone().into(), self.b.clone().into(), self.a.clone().into()]);
        f.write_str(&p.display_in("t"))
    }
}

impl Serialize for Quadratic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{},{},{}", self.a, self.b, self.c))
    }
}

impl<'de> Deserialize<'de> for Quadratic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match Factor::decode(&format!("quad:{s}")).map_err(serde::de::Error::custom)? {
            Factor::Quad(q) => Ok(q),
            Factor::Lin(_) => unreachable!("quad prefix"),
        }
    }
}

/// Irreducible-over-(0,1) denominator factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// `t - r`
    Lin(Rational),
    Quad(Quadratic),
}

impl Factor {
    pub fn poly(&self) -> UniPoly {
        match self {
            Factor::Lin(r) => UniPoly::linear_root(&FieldElement::from_rational(r.clone())),
            Factor::Quad(q) => q.poly(),
        }
    }

    /// Constant sign on the open interval (0, 1), when there is one.
    pub fn sign_on_unit(&self) -> Option<Sign> {
        match self {
            Factor::Lin(r) if !r.is_positive() => Some(Sign::Positive),
            Factor::Lin(r) if *r >= Rational::one() => Some(Sign::Negative),
            Factor::Lin(_) => None,
            Factor::Quad(_) => Some(Sign::Positive),
        }
    }

    fn encode(&self) -> String {
        match self {
            Factor::Lin(r) => format!("lin:{r}"),
            Factor::Quad(q) => format!("quad:{},{},{}", q.a, q.b, q.c),
        }
    }

    fn decode(s: &str) -> Result<Self, String> {
        if let Some(r) = s.strip_prefix("lin:") {
            return parse_rational(r).map(Factor::Lin).map_err(|e| e.to_string());
        }
        if let Some(q) = s.strip_prefix("quad:") {
            let parts: Vec<BigInt> = q.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|e| format!("{e}"))?;
            if let [a, b, c] = parts.as_slice() {
                return Ok(Factor::Quad(Quadratic { a: a.clone(), b: b.clone(), c: c.clone() }));
            }
        }
        Err(format!("bad factor {s:?}"))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Lin(r) if r.is_zero() => f.write_str("t"),
            Factor::Lin(r) if r.is_negative() => write!(f, "(t + {})", -r),
            Factor::Lin(r) => write!(f, "(t - {r})"),
            Factor::Quad(q) => write!(f, "({q})"),
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for Factor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Factor::decode(&s).map_err(serde::de::Error::custom)
    }
}

/// Rational function `num / prod f^e` with a factored denominator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunc {
    num: UniPoly,
    den: BTreeMap<Factor, u32>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc::default()
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        RatFunc { num: UniPoly::constant(c), den: BTreeMap::new() }
    }

    pub fn poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: BTreeMap::new() }
    }

    pub fn t() -> Self {
        Self::poly(UniPoly::x())
    }

    pub fn t_pow(k: u32) -> Self {
        Self::poly(UniPoly::constant(FieldElement::one()).shift_up(k as usize))
    }

    /// `1 / f^e`
    pub fn inv_factor(f: Factor, e: u32) -> Self {
        Self::new(UniPoly::constant(FieldElement::one()), [(f, e)].into_iter().collect())
    }

    pub fn new(num: UniPoly, den: BTreeMap<Factor, u32>) -> Self {
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        self.den.retain(|_, e| *e > 0);
        let factors: Vec<Factor> = self.den.keys().cloned().collect();
        for f in factors {
            let fp = f.poly();
            while self.den[&f] > 0 {
                match self.num.div_rem(&fp) {
                    Ok((q, r)) if r.is_zero() => {
                        self.num = q;
                        *self.den.get_mut(&f).expect("present") -= 1;
                    }
                    _ => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &BTreeMap<Factor, u32> {
        &self.den
    }

    pub fn denom_poly(&self) -> UniPoly {
        self.den.iter().fold(UniPoly::constant(FieldElement::one()), |acc, (f, &e)| &acc * &f.poly().pow(e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real()
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }

    /// Numerator after multiplying by `prod f^target[f]`; each target exponent must dominate.
    pub fn numer_over(&self, target: &BTreeMap<Factor, u32>) -> UniPoly {
        let mut n = self.num.clone();
        for (f, &e) in target {
            let have = self.den.get(f).copied().unwrap_or(0);
            assert!(e >= have, "target denominator does not dominate");
            if e > have {
                n = &n * &f.poly().pow(e - have);
            }
        }
        n
    }

    pub fn eval(&self, t: &FieldElement) -> Result<FieldElement, ModelError> {
        let d = self.denom_poly().eval(t);
        if d.is_zero() {
            return Err(ModelError::Pole(t.to_string()));
        }
        Ok(self.num.eval(t).checked_div(&d)?)
    }

    pub fn derivative(&self) -> Self {
        let base = UniPoly::constant(FieldElement::one());
        let all: UniPoly = self.den.keys().fold(base.clone(), |acc, f| &acc * &f.poly());
        let mut num = &self.num.derivative() * &all;
        for (f, &e) in &self.den {
            let others = self.den.keys().filter(|g| *g != f).fold(base.clone(), |acc, g| &acc * &g.poly());
            let term = &(&self.num * &f.poly().derivative()) * &others;
            num = &num - &term.scale(&FieldElement::from_int(e as i64));
        }
        let den = self.den.iter().map(|(f, &e)| (f.clone(), e + 1)).collect();
        RatFunc::new(num, den)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn map_coeffs<F: Fn(&FieldElement) -> FieldElement>(&self, f: F) -> Self {
        RatFunc::new(UniPoly::new(self.num.coeffs().iter().map(f).collect()), self.den.clone())
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_empty() {
            return self.num.display_in(var);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, &e)| {
                let s = f.to_string().replace('t', var);
                if e == 1 { s } else { format!("{s}^{e}") }
            })
            .collect();
        format!("({})/({})", self.num.display_in(var), den.join("*"))
    }
}

fn lcm_den(a: &BTreeMap<Factor, u32>, b: &BTreeMap<Factor, u32>) -> BTreeMap<Factor, u32> {
    let mut out = a.clone();
    for (f, &e) in b {
        let slot = out.entry(f.clone()).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let den = lcm_den(&self.den, &rhs.den);
        RatFunc::new(&self.numer_over(&den) + &rhs.numer_over(&den), den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let mut den = self.den.clone();
        for (f, &e) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        RatFunc::new(&self.num * &rhs.num, den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}
