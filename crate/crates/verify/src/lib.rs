//! Strategies, oracles and reference data shared by the property and acceptance suites.

use ccsym::exact::{rat, FieldElement, Rational};
use ccsym::poly::{BoxQ, IntervalQ, MultiPoly, UniPoly};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != rat(0, 1))
}

/// Elements of Q(i, sqrt 2, sqrt 3, sqrt 5) with a few nonzero coordinates.
pub fn field_element() -> impl Strategy<Value = FieldElement> {
    let basis = prop_oneof![Just(1i64), Just(2), Just(3), Just(5), Just(6), Just(10), Just(-1), Just(-2)];
    prop::collection::vec((basis, small_rational()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(FieldElement::zero(), |acc, (m, c)| {
            &acc + &FieldElement::sqrt_rational(&rat(m, 1)).scale(&c)
        })
    })
}

/// A polynomial assembled from known linear and root-free quadratic factors.
#[derive(Clone, Debug)]
pub struct RootedPoly {
    pub poly: UniPoly,
    /// Distinct real roots with multiplicity.
    pub roots: Vec<(Rational, u32)>,
}

impl RootedPoly {
    /// Number of distinct roots strictly inside `(lo, hi)`.
    pub fn count_inside(&self, lo: &Rational, hi: &Rational) -> usize {
        self.roots.iter().filter(|(r, _)| lo < r && r < hi).count()
    }
}

pub fn rooted_poly(max_degree: usize) -> impl Strategy<Value = RootedPoly> {
    let root = (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d));
    let quad = (-6i64..=6, 1i64..=9).prop_map(|(b, e)| (b, b * b / 4 + e));
    (
        prop::collection::vec((root, 1u32..=3), 0..=max_degree),
        prop::collection::vec(quad, 0..=max_degree / 2),
        prop_oneof![Just(1i64), Just(-1), Just(3), Just(-7)],
    )
        .prop_map(move |(raw_roots, quads, lead)| {
            let mut roots: Vec<(Rational, u32)> = Vec::new();
            let mut degree = 0;
            for (r, m) in raw_roots {
                if degree + m as usize > max_degree {
                    break;
                }
                degree += m as usize;
                match roots.iter_mut().find(|(s, _)| *s == r) {
                    Some(e) => e.1 += m,
                    None => roots.push((r, m)),
                }
            }
            let mut poly = UniPoly::from_ints(&[lead]);
            for (r, m) in &roots {
                poly = &poly * &UniPoly::linear_root(&FieldElement::from_rational(r.clone())).pow(*m);
            }
            for (b, c) in quads {
                if degree + 2 > max_degree {
                    break;
                }
                // x^2 + b x + c with b^2 < 4c has no real roots.
                degree += 2;
                poly = &poly * &UniPoly::from_ints(&[c, b, 1]);
            }
            RootedPoly { poly, roots }
        })
}

/// Open interval with endpoints that may coincide with the roots' grid.
pub fn open_interval() -> impl Strategy<Value = (Rational, Rational)> {
    ((-14i64..=14, 1i64..=4), (1i64..=28, 1i64..=4)).prop_map(|((n, d), (w, e))| {
        let lo = rat(n, d);
        let hi = &lo + rat(w, e);
        (lo, hi)
    })
}

/// A bivariate polynomial with rational coefficients and a box with rational corners.
pub fn poly_and_box() -> impl Strategy<Value = (MultiPoly, BoxQ)> {
    let term = ((0u32..=3, 0u32..=3), small_rational());
    let side = || {
        (small_rational(), 1i64..=5, 1i64..=3, any::<bool>(), any::<bool>()).prop_map(|(lo, w, d, lc, hc)| {
            let hi = &lo + rat(w, d);
            IntervalQ::new(FieldElement::from_rational(lo), FieldElement::from_rational(hi), lc, hc).unwrap()
        })
    };
    (prop::collection::vec(term, 1..8), side(), side()).prop_map(|(terms, a, b)| {
        let vars = vec!["u".to_string(), "v".to_string()];
        let p = MultiPoly::from_terms(vars, terms.into_iter().map(|((i, j), c)| (vec![i, j], FieldElement::from_rational(c))));
        (p, BoxQ::new(vec![a, b]))
    })
}

/// Checks the field axioms on one triple; returns the first violated identity.
pub fn field_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<(), String> {
    let zero = FieldElement::zero();
    let one = FieldElement::one();
    let checks: [(&str, bool); 8] = [
        ("a + b = b + a", &(a + b) == &(b + a)),
        ("a b = b a", &(a * b) == &(b * a)),
        ("(a + b) + c = a + (b + c)", &(&(a + b) + c) == &(a + &(b + c))),
        ("(a b) c = a (b c)", &(&(a * b) * c) == &(a * &(b * c))),
        ("a (b + c) = a b + a c", &(a * &(b + c)) == &(&(a * b) + &(a * c))),
        ("a + 0 = a", &(a + &zero) == a),
        ("a 1 = a", &(a * &one) == a),
        ("a - a = 0", (a - a).is_zero()),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(format!("{name} fails for a = {a}, b = {b}, c = {c}"));
    }
    if !a.is_zero() {
        let inv = a.inv().map_err(|e| e.to_string())?;
        if !(a * &inv).is_one() {
            return Err(format!("a a^-1 = 1 fails for a = {a}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    proptest! {
        #[test]
        fn rooted_poly_vanishes_exactly_at_its_roots(p in rooted_poly(8)) {
            prop_assert!(p.poly.degree().unwrap_or(0) <= 8);
            for (r, _) in &p.roots {
                prop_assert!(p.poly.eval(&FieldElement::from_rational(r.clone())).is_zero());
            }
        }

        #[test]
        fn field_axioms_accept_generated_elements(a in field_element(), b in field_element(), c in field_element()) {
            prop_assert_eq!(field_axioms(&a, &b, &c), Ok(()));
        }
    }

    #[test]
    fn count_inside_is_strict() {
        let p = RootedPoly { poly: UniPoly::from_ints(&[0, 1]), roots: vec![(rat(0, 1), 1), (rat(1, 2), 2)] };
        assert_eq!(p.count_inside(&rat(0, 1), &rat(1, 1)), 1);
        assert_eq!(p.count_inside(&rat(-1, 1), &rat(1, 2)), 1);
        assert_eq!(p.count_inside(&rat(-1, 1), &rat(1, 1)), 2);
    }
}
