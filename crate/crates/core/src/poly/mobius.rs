use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BoxQ, Exponent, IntervalQ, MultiPoly, PolyError, UniPoly};
use crate::exact::{FieldElement, Sign};

/// Substitution ends `(a, b)` for `x = (a u + b)/(u + 1)`, `u` in `[0, oo)`,
/// plus whether `a` itself belongs to the interval. The open end goes to `a`.
pub fn oriented_ends(i: &IntervalQ) -> (FieldElement, FieldElement, bool) {
    match (i.lo_closed, i.hi_closed) {
        (true, false) => (i.hi.clone(), i.lo.clone(), false),
        (true, true) => (i.lo.clone(), i.hi.clone(), true),
        _ => (i.lo.clone(), i.hi.clone(), false),
    }
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::from(1)]];
    for k in 1..=n {
        let prev = &t[k - 1];
        let mut row = vec![BigInt::from(1); k + 1];
        for j in 1..k {
            row[j] = &prev[j - 1] + &prev[j];
        }
        t.push(row);
    }
    t
}

fn check_dim(p: &MultiPoly, b: &BoxQ) -> Result<(), PolyError> {
    if p.nvars() != b.dim() {
        return Err(PolyError::DimensionMismatch { expected: p.nvars(), got: b.dim() });
    }
    Ok(())
}

/// Numerator of `p` composed with the Möbius maps of every box side.
pub fn mobius_restrict(p: &MultiPoly, b: &BoxQ) -> Result<MultiPoly, PolyError> {
    check_dim(p, b)?;
    let mut cur = p.clone();
    for j in 0..p.nvars() {
        let d = cur.degree_in(j) as usize;
        if d == 0 {
            continue;
        }
        let (a, bb, _) = oriented_ends(&b.intervals[j]);
        let num = UniPoly::new(vec![bb, a]);
        let den = UniPoly::from_ints(&[1, 1]);
        let pieces: Vec<UniPoly> = (0..=d).map(|i| &num.pow(i as u32) * &den.pow((d - i) as u32)).collect();
        let mut next = MultiPoly::zero(cur.vars().to_vec());
        for (e, c) in cur.terms() {
            for (k, pc) in pieces[e.0[j] as usize].coeffs().iter().enumerate() {
                if pc.is_zero() {
                    continue;
                }
                let mut ne = e.0.clone();
                ne[j] = k as u32;
                next.add_term(Exponent(ne), c * pc);
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Per-variable tables `W[i][k]`: coefficient of `u^k` in `(a u + b)^i (u + 1)^(D - i)`.
fn weight_tables(p: &MultiPoly, b: &BoxQ) -> Vec<Vec<Vec<FieldElement>>> {
    let degrees = p.degrees();
    let top = degrees.iter().copied().max().unwrap_or(0) as usize;
    let binom = binomials(top);
    let c = |n: usize, k: isize| -> BigRational {
        if k < 0 || k as usize > n {
            BigRational::from_integer(BigInt::from(0))
        } else {
            BigRational::from_integer(binom[n][k as usize].clone())
        }
    };
    degrees
        .iter()
        .zip(&b.intervals)
        .map(|(&dj, iv)| {
            let d = dj as usize;
            let (a, bb, _) = oriented_ends(iv);
            let apow: Vec<FieldElement> = (0..=d).map(|s| a.pow(s as u32)).collect();
            let bpow: Vec<FieldElement> = (0..=d).map(|s| bb.pow(s as u32)).collect();
            (0..=d)
                .map(|i| {
                    (0..=d)
                        .map(|k| {
                            let mut acc = FieldElement::zero();
                            for s in 0..=i.min(k) {
                                let w = c(i, s as isize) * c(d - i, k as isize - s as isize);
                                if w == BigRational::from_integer(BigInt::from(0)) {
                                    continue;
                                }
                                acc = &acc + &(&apow[s] * &bpow[i - s]).scale(&w);
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn coefficient_from_tables(p: &MultiPoly, w: &[Vec<Vec<FieldElement>>], k: &[u32]) -> FieldElement {
    let mut acc = FieldElement::zero();
    for (e, c) in p.terms() {
        let mut v = c.clone();
        for (j, (&i, &kj)) in e.0.iter().zip(k).enumerate() {
            let f = &w[j][i as usize][kj as usize];
            if f.is_zero() {
                v = FieldElement::zero();
                break;
            }
            if !f.is_one() {
                v = &v * f;
            }
        }
        acc = &acc + &v;
    }
    acc
}

/// Coefficient of `u^k` in the restriction, from the binomial-sum formula.
pub fn mobius_coefficient(p: &MultiPoly, b: &BoxQ, k: &[u32]) -> Result<FieldElement, PolyError> {
    check_dim(p, b)?;
    if k.len() != p.nvars() {
        return Err(PolyError::DimensionMismatch { expected: p.nvars(), got: k.len() });
    }
    if k.iter().zip(p.degrees()).any(|(&kj, d)| kj > d) {
        return Ok(FieldElement::zero());
    }
    let w = weight_tables(p, b);
    Ok(coefficient_from_tables(p, &w, k))
}

fn grid(degrees: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &d in degrees {
        out = out.into_iter().flat_map(|e| (0..=d).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    out
}

/// All restricted coefficients computed independently (in parallel) by formula.
pub fn mobius_coefficients(p: &MultiPoly, b: &BoxQ) -> Result<MultiPoly, PolyError> {
    check_dim(p, b)?;
    let w = weight_tables(p, b);
    let coeffs: Vec<(Vec<u32>, FieldElement)> = grid(&p.degrees())
        .into_par_iter()
        .map(|k| {
            let c = coefficient_from_tables(p, &w, &k);
            (k, c)
        })
        .collect();
    Ok(MultiPoly::from_terms(p.vars().to_vec(), coeffs))
}

/// Outcome of the coefficient sign test on a restricted polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignTest {
    /// Certified sign of the polynomial on the box, if the test succeeded.
    pub sign: Option<Sign>,
    /// Every coefficient of the full degree grid is nonzero with one sign.
    pub strict: bool,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Sign test on `q = p|_B` (degrees of `p` given). Succeeds when all coefficients
/// are of one weak sign, the constant term is nonzero and, for every set of
/// variables whose oriented end `a` lies in the box, the matching corner
/// coefficient is nonzero.
pub fn coefficient_sign_test(q: &MultiPoly, degrees: &[u32], closed_at_a: &[bool]) -> Result<SignTest, PolyError> {
    let mut positive = 0;
    let mut negative = 0;
    for c in q.terms().values() {
        match c.sign()? {
            Sign::Positive => positive += 1,
            Sign::Negative => negative += 1,
            Sign::Zero => {}
        }
    }
    let total: usize = degrees.iter().map(|&d| d as usize + 1).product();
    let zero = total - positive - negative;
    let strict = zero == 0 && (positive == 0 || negative == 0);
    let candidate = match (positive, negative) {
        (_, 0) if positive > 0 => Some(Sign::Positive),
        (0, _) if negative > 0 => Some(Sign::Negative),
        _ => None,
    };
    let n = degrees.len();
    let mut sign = None;
    if let Some(s) = candidate {
        let closed: Vec<usize> = (0..n).filter(|&j| closed_at_a[j]).collect();
        let mut ok = q.coeff(&vec![0; n]).sign()? == s;
        for mask in 1u32..(1 << closed.len()) {
            if !ok {
                break;
            }
            let mut e = vec![0; n];
            for (bit, &j) in closed.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    e[j] = degrees[j];
                }
            }
            ok = q.coeff(&e).sign()? == s;
        }
        if ok {
            sign = Some(s);
        }
    }
    Ok(SignTest { sign, strict, positive, negative, zero })
}
