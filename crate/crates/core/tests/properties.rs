use ccsym::certify::{affine_parts, certify_sign, det_affine, sign_at, CertifyOptions, SignCertificate};
use ccsym::exact::{rat, FieldElement, Rational, Sign};
use ccsym::model::{
    build_s, check_symmetry, curve_box, decompose, lift, nested_polyhedron, LiftStyle, PolyhedronKind, Quadratic, RadicalExpr,
    RatFunc,
};
use ccsym::poly::{count_roots_deflating, mobius_coefficient, mobius_restrict, IntervalQ, UniPoly};
use ccsym_verify::*;
use proptest::prelude::*;

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..=199).prop_map(|n| rat(n, 200))
}

fn radicals() -> Vec<Quadratic> {
    vec![Quadratic::from_ints(3, 2, 3), Quadratic::from_ints(3, -2, 3), Quadratic::from_ints(1, 0, 1)]
}

/// `sum_k p_k(t) * r_k` over products of at most two radicals.
fn radical_expr() -> impl Strategy<Value = RadicalExpr> {
    let poly = prop::collection::vec(-5i64..=5, 1..4).prop_map(|c| UniPoly::from_ints(&c));
    prop::collection::vec((poly, 0usize..6), 1..4).prop_map(|terms| {
        let q = radicals();
        terms.into_iter().fold(RadicalExpr::zero(), |acc, (p, shape)| {
            let r = RadicalExpr::rational(RatFunc::poly(p));
            let m = match shape {
                0 => RadicalExpr::from_int(1),
                1 => RadicalExpr::radical(&q[0]),
                2 => RadicalExpr::radical(&q[1]),
                3 => RadicalExpr::inv_radical_cube(&q[0]),
                4 => &RadicalExpr::radical(&q[0]) * &RadicalExpr::radical(&q[1]),
                _ => RadicalExpr::inv_radical_cube(&q[2]),
            };
            &acc + &(&r * &m)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms_hold(a in field_element(), b in field_element(), c in field_element()) {
        prop_assert_eq!(field_axioms(&a, &b, &c), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sturm_matches_known_roots(p in rooted_poly(8), (lo, hi) in open_interval()) {
        let i = IntervalQ::open_rational(lo.clone(), hi.clone());
        let got = count_roots_deflating(&p.poly, &i).unwrap().count;
        prop_assert_eq!(got, p.count_inside(&lo, &hi));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mobius_formula_matches_restriction((p, b) in poly_and_box()) {
        let full = mobius_restrict(&p, &b).unwrap();
        for i in 0..=p.degree_in(0) {
            for j in 0..=p.degree_in(1) {
                let k = [i, j];
                prop_assert_eq!(mobius_coefficient(&p, &b, &k).unwrap(), full.coeff(&k));
            }
        }
    }

    #[test]
    fn curve_box_contains_curve(a in unit_rational(), w in 1i64..=50, s in 0i64..=8) {
        let hi = std::cmp::min(&a + rat(w, 200), rat(1, 1));
        let t = &a + (&hi - &a) * rat(s, 8);
        let i = IntervalQ::closed_rational(a, hi);
        let qs = radicals();
        let b = curve_box(&qs, &i).unwrap();
        let mut point = vec![FieldElement::from_rational(t.clone())];
        point.extend(qs.iter().map(|q| FieldElement::sqrt_rational(&q.eval(&t))));
        prop_assert!(b.contains(&point).unwrap());
    }

    #[test]
    fn lift_identity(e in radical_expr(), t in unit_rational(), multilinear in any::<bool>()) {
        let style = if multilinear { LiftStyle::Multilinear } else { LiftStyle::RadicalPowers };
        let l = lift(&e, style).unwrap();
        prop_assert!(l.verify(&e));
        let num = l.numerator_on_curve().eval_rational(&t).unwrap();
        let den = l.denominator_on_curve().eval_rational(&t).unwrap();
        prop_assert!(!den.is_zero());
        prop_assert_eq!(num.checked_div(&den).unwrap(), e.eval_rational(&t).unwrap());
    }

    #[test]
    fn det_affine_matches_pointwise_det(t in unit_rational(), c in small_rational(), case in 0usize..3) {
        let d = decompose(&nested_polyhedron(PolyhedronKind::ALL[case])).unwrap();
        let b = &d.blocks[0];
        let (a1, a0) = det_affine(&b.matrix).unwrap();
        let fc = FieldElement::from_rational(c.clone());
        let e = |i, j| b.matrix.get(i, j).eval(&fc, &t).unwrap();
        let direct = &(&e(0, 0) * &e(1, 1)) - &(&e(0, 1) * &e(1, 0));
        let affine = &(&a1.eval_rational(&t).unwrap() * &fc) + &a0.eval_rational(&t).unwrap();
        prop_assert_eq!(direct, affine);
    }
}

#[test]
fn symmetry_identity_on_generators() {
    for kind in PolyhedronKind::ALL {
        let config = nested_polyhedron(kind);
        let s = build_s(&config).unwrap();
        check_symmetry(&s, &config).unwrap();
    }
}

fn tetrahedron_alpha() -> (RadicalExpr, RadicalExpr) {
    let d = decompose(&nested_polyhedron(PolyhedronKind::Tetrahedron)).unwrap();
    let t1 = d.block("T1").unwrap();
    affine_parts(&ccsym::certify::minor(&t1.matrix, 0, 1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certified_signs_hold_at_samples(t in unit_rational()) {
        let (a1, a0) = tetrahedron_alpha();
        prop_assert_eq!(sign_at(&a1, &t).unwrap(), Sign::Negative);
        prop_assert_eq!(sign_at(&a0, &t).unwrap(), Sign::Positive);
    }
}

#[test]
fn sign_certificate_round_trips_and_replays() {
    let (a1, _) = tetrahedron_alpha();
    let c = certify_sign("alpha1", &a1, Some(Sign::Negative), CertifyOptions::default()).unwrap();
    let back: SignCertificate = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
    back.replay().unwrap();
}
