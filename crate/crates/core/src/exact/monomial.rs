use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Basis element `i^imag * sqrt(root)` with `root` square-free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub imag: bool,
    pub root: BigUint,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { imag: false, root: BigUint::one() }
    }

    pub fn is_one(&self) -> bool {
        !self.imag && self.root.is_one()
    }

    /// Product of two basis elements as `coefficient * monomial`.
    pub fn mul(&self, other: &Monomial) -> (BigInt, Monomial) {
        let g = self.root.gcd(&other.root);
        let root = (&self.root / &g) * (&other.root / &g);
        let mut coef = BigInt::from(g);
        let imag = match (self.imag, other.imag) {
            (true, true) => {
                coef = -coef;
                false
            }
            (a, b) => a ^ b,
        };
        (coef, Monomial { imag, root })
    }

    /// Whether the basis element involves the generator `sqrt(b)` (for `b > 1`).
    pub fn contains(&self, b: &BigUint) -> bool {
        (&self.root % b).is_zero()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.imag, self.root.is_one()) {
            (false, true) => write!(f, "1"),
            (true, true) => write!(f, "i"),
            (false, false) => write!(f, "sqrt({})", self.root),
            (true, false) => write!(f, "i*sqrt({})", self.root),
        }
    }
}

/// Writes `n = outer^2 * kernel` with `kernel` square-free.
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut outer = BigUint::one();
    let mut kernel = BigUint::one();
    if let Some(small) = n.to_u64() {
        for (p, e) in num_prime::nt_funcs::factorize64(small) {
            let p = BigUint::from(p);
            outer *= p.pow((e / 2) as u32);
            if e % 2 == 1 {
                kernel *= p;
            }
        }
    } else {
        for (p, e) in num_prime::nt_funcs::factorize(n.clone()) {
            outer *= p.pow((e / 2) as u32);
            if e % 2 == 1 {
                kernel *= p;
            }
        }
    }
    (outer, kernel)
}

/// Pairwise coprime set whose products recover every input (ones dropped).
pub fn coprime_base(values: &[BigUint]) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = values.iter().filter(|v| !v.is_one() && !v.is_zero()).cloned().collect();
    base.sort();
    base.dedup();
    loop {
        let mut split = None;
        'outer: for a in 0..base.len() {
            for b in a + 1..base.len() {
                let g = base[a].gcd(&base[b]);
                if !g.is_one() {
                    split = Some((a, b, g));
                    break 'outer;
                }
            }
        }
        let Some((a, b, g)) = split else { break };
        let x = &base[a] / &g;
        let y = &base[b] / &g;
        base.remove(b);
        base.remove(a);
        for v in [x, y, g] {
            if !v.is_one() {
                base.push(v);
            }
        }
        base.sort();
        base.dedup();
    }
    base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(imag: bool, root: u64) -> Monomial {
        Monomial { imag, root: BigUint::from(root) }
    }

    #[test]
    fn products_reduce_shared_factors() {
        let (c, r) = m(false, 6).mul(&m(false, 10));
        assert_eq!(c, BigInt::from(2));
        assert_eq!(r, m(false, 15));
        let (c, r) = m(true, 3).mul(&m(true, 3));
        assert_eq!(c, BigInt::from(-3));
        assert_eq!(r, Monomial::one());
    }

    #[test]
    fn square_free_split_small_and_large() {
        let (o, k) = square_free_split(&BigUint::from(72u32));
        assert_eq!((o, k), (BigUint::from(6u32), BigUint::from(2u32)));
        let big = BigUint::from(1_000_000_007u64).pow(2) * BigUint::from(998_244_353u64) * BigUint::from(12u32);
        let (o, k) = square_free_split(&big);
        assert_eq!(o, BigUint::from(2_000_000_014u64));
        assert_eq!(k, BigUint::from(998_244_353u64 * 3));
    }

    #[test]
    fn coprime_base_splits_common_factors() {
        let v: Vec<BigUint> = [6u32, 10, 15, 1].iter().map(|&x| BigUint::from(x)).collect();
        let base = coprime_base(&v);
        assert_eq!(base, vec![BigUint::from(2u32), BigUint::from(3u32), BigUint::from(5u32)]);
    }
}
