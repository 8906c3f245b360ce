use serde::{Deserialize, Serialize};

use super::{Factor, ModelError, RadicalExpr};
use crate::exact::{FieldElement, Rational, Sign};
use crate::poly::UniPoly;

/// Side from which `t0` is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Leading Laurent term `coeff * (t - t0)^order` of an expression at `t0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentLead {
    #[serde(with = "crate::exact::rational_str")]
    pub t0: Rational,
    pub side: Side,
    pub order: i32,
    pub coeff: FieldElement,
    /// Sign of the expression just beside `t0` on the given side.
    pub sign: Sign,
}

impl LaurentLead {
    pub fn describe(&self) -> String {
        let side = if self.side == Side::Right { "+" } else { "-" };
        let limit = match self.order {
            o if o < 0 => (if self.sign == Sign::Positive { "+inf" } else { "-inf" }).to_string(),
            0 => self.coeff.to_string(),
            _ => "0".to_string(),
        };
        format!("limit at t -> {}{side} is {limit} (leading order {}, sign {})", self.t0, self.order, self.sign)
    }
}

/// Truncated Laurent series in `h`: coefficients of `h^lo ... h^(prec-1)`.
#[derive(Clone, Debug)]
struct Series {
    lo: i32,
    c: Vec<FieldElement>,
}

impl Series {
    fn prec(&self) -> i32 {
        self.lo + self.c.len() as i32
    }

    fn at(&self, k: i32) -> FieldElement {
        if k < self.lo || k >= self.prec() {
            FieldElement::zero()
        } else {
            self.c[(k - self.lo) as usize].clone()
        }
    }

    fn from_poly(p: &UniPoly, prec: i32) -> Series {
        Series { lo: 0, c: (0..prec.max(0) as usize).map(|k| p.coeff(k)).collect() }
    }

    fn mul(&self, o: &Series) -> Series {
        let lo = self.lo + o.lo;
        let prec = (self.lo + o.prec()).min(o.lo + self.prec());
        let c = (lo..prec)
            .map(|k| {
                let mut acc = FieldElement::zero();
                for i in self.lo..self.prec() {
                    let j = k - i;
                    if j < o.lo || j >= o.prec() {
                        continue;
                    }
                    let (a, b) = (self.at(i), o.at(j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(&a * &b);
                    }
                }
                acc
            })
            .collect();
        Series { lo, c }
    }

    fn add(&self, o: &Series) -> Series {
        let lo = self.lo.min(o.lo);
        let prec = self.prec().min(o.prec());
        Series { lo, c: (lo..prec).map(|k| &self.at(k) + &o.at(k)).collect() }
    }

    /// Inverse of a series whose lowest stored coefficient is nonzero.
    fn inv(&self) -> Result<Series, ModelError> {
        let v = (self.lo..self.prec()).find(|&k| !self.at(k).is_zero()).ok_or_else(|| {
            ModelError::Exact(crate::exact::ExactError::Undecided("series vanishes to working precision".into()))
        })?;
        let n = (self.prec() - v) as usize;
        let a: Vec<FieldElement> = (0..n).map(|i| self.at(v + i as i32)).collect();
        let a0inv = a[0].inv()?;
        let mut b = vec![FieldElement::zero(); n];
        b[0] = a0inv.clone();
        for k in 1..n {
            let mut s = FieldElement::zero();
            for i in 1..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    s = &s + &(&a[i] * &b[k - i]);
                }
            }
            b[k] = -(&s * &a0inv);
        }
        Ok(Series { lo: -v, c: b })
    }

    fn one(len: usize) -> Series {
        let mut c = vec![FieldElement::zero(); len.max(1)];
        c[0] = FieldElement::one();
        Series { lo: 0, c }
    }

    fn pow(&self, e: u32) -> Series {
        (0..e).fold(Series::one(self.c.len()), |acc, _| acc.mul(self))
    }
}

/// `sqrt(q0 + q1 h + q2 h^2)` for `q0 > 0`, by the binomial series.
fn sqrt_series(p: &UniPoly, prec: i32) -> Result<Series, ModelError> {
    let q0 = p.coeff(0).to_rational()?;
    let s0 = FieldElement::sqrt_rational(&q0);
    let x = Series { lo: 0, c: (0..prec as usize).map(|k| if k == 0 { FieldElement::zero() } else { p.coeff(k).scale(&q0.recip()) }).collect() };
    let mut acc = Series { lo: 0, c: vec![FieldElement::zero(); prec as usize] };
    let mut xp = Series::one(prec as usize);
    let mut binom = Rational::from_integer(1.into());
    let half = Rational::new(1.into(), 2.into());
    for k in 0..prec {
        acc = acc.add(&Series { lo: 0, c: xp.c.iter().map(|v| v.scale(&binom)).collect() });
        binom = binom * (&half - Rational::from_integer(k.into())) / Rational::from_integer((k + 1).into());
        xp = xp.mul(&x);
    }
    Ok(Series { lo: 0, c: acc.c.iter().map(|v| v * &s0).collect() })
}

fn expand(e: &RadicalExpr, t0: &Rational, prec: i32) -> Result<Series, ModelError> {
    let shift = FieldElement::from_rational(t0.clone());
    let mut total = Series { lo: 0, c: vec![FieldElement::zero(); prec as usize] };
    for (mask, r) in e.terms() {
        let mut s = Series::from_poly(&r.numer().taylor_shift(&shift), prec);
        for (f, &k) in r.denom() {
            let fs = match f {
                Factor::Lin(root) if root == t0 => {
                    let mut h = Series::one(prec as usize - 1);
                    h.lo = 1;
                    h
                }
                _ => Series::from_poly(&f.poly().taylor_shift(&shift), prec),
            };
            s = s.mul(&fs.inv()?.pow(k));
        }
        for q in mask {
            s = s.mul(&sqrt_series(&q.poly().taylor_shift(&shift), prec)?);
        }
        total = total.add(&s);
    }
    Ok(total)
}

/// Leading Laurent term of `e` at `t0`, found by exact series expansion.
pub fn laurent_lead(e: &RadicalExpr, t0: &Rational, side: Side) -> Result<LaurentLead, ModelError> {
    if e.is_zero() {
        return Err(ModelError::Unsupported("Laurent expansion of the zero expression".into()));
    }
    let mut prec = 8;
    loop {
        let s = expand(e, t0, prec)?;
        if let Some(k) = (s.lo..s.prec()).find(|&k| !s.at(k).is_zero()) {
            let coeff = s.at(k);
            let mut sign = coeff.sign()?;
            if side == Side::Left && k.rem_euclid(2) == 1 {
                sign = sign.flip();
            }
            return Ok(LaurentLead { t0: t0.clone(), side, order: k, coeff, sign });
        }
        if prec >= 128 {
            return Err(ModelError::Exact(crate::exact::ExactError::Undecided(format!(
                "no nonzero Laurent coefficient at t = {t0} below order {}",
                s.prec()
            ))));
        }
        prec *= 2;
    }
}
