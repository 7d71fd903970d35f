mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use tropgrass::arith::{int, rat, LaurentPoly, PuiseuxCoeff, Rational};
use tropgrass::curve::{
    check_balancing, is_connected, is_tree, lifted_support, tropicalize_curve, weierstrass_case, weierstrass_curve,
    CurveError, TropPlaneCurve, WeierstrassCase,
};
use tropgrass::sampling::rng_from_seed;

use common::{corner_locus, gcd, hull_sides};

fn poly(terms: &[([i64; 2], PuiseuxCoeff)]) -> LaurentPoly {
    let t: Vec<(&[i64], PuiseuxCoeff)> = terms.iter().map(|(e, c)| (&e[..], c.clone())).collect();
    LaurentPoly::from_i64_terms(2, &t).unwrap()
}

/// A random polynomial whose support lies in the degree-`d` triangle.
fn random_support_poly(seed: u64, d: i64, terms: usize) -> LaurentPoly {
    let mut rng = rng_from_seed(seed);
    let mut t = Vec::new();
    for _ in 0..terms {
        let a = rng.gen_range(0..=d);
        let b = rng.gen_range(0..=d - a);
        let v = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        t.push(([a, b], PuiseuxCoeff::monomial(int(1), v)));
    }
    poly(&t)
}

fn support_points(f: &LaurentPoly) -> Vec<[i64; 2]> {
    lifted_support(f).unwrap().into_iter().map(|p| p.0).collect()
}

fn is_collinear(p: &[[i64; 2]]) -> bool {
    p.iter().all(|r| (p[1][0] - p[0][0]) * (r[1] - p[0][1]) == (p[1][1] - p[0][1]) * (r[0] - p[0][0]))
}

/// Expected ray weights: each hull side contributes its lattice length in the
/// direction of its inward normal.
fn expected_rays(pts: &[[i64; 2]]) -> BTreeMap<[i64; 2], i64> {
    let mut m = BTreeMap::new();
    for (p, q, n) in hull_sides(pts) {
        *m.entry(n).or_insert(0) += gcd(q[0] - p[0], q[1] - p[1]);
    }
    m
}

#[test]
fn weierstrass_case_a_exact() {
    let c = tropicalize_curve(&weierstrass_curve(&int(2), &int(3))).unwrap();
    assert_eq!(weierstrass_case(&int(2), &int(3)), WeierstrassCase::A);
    assert_eq!(c.vertices, vec![[int(1), rat(3, 2)]]);
    assert!(c.edges.is_empty());
    assert_eq!(c.ray_weights(), BTreeMap::from([([-2, -3], 1), ([0, 1], 3), ([1, 0], 2)]));
    assert!(check_balancing(&c).balanced);
}

#[test]
fn weierstrass_case_b_exact() {
    let c = tropicalize_curve(&weierstrass_curve(&int(0), &int(1))).unwrap();
    assert_eq!(weierstrass_case(&int(0), &int(1)), WeierstrassCase::B);
    // X = 3X = 2Y at the origin, X = 2Y = 1 at (1, 1/2)
    assert_eq!(c.vertices.len(), 2);
    assert_eq!(c.edges.len(), 1);
    assert!(is_tree(&c) && check_balancing(&c).balanced);
    for v in &c.vertices {
        assert!(v == &[int(0), int(0)] || v == &[int(1), rat(1, 2)], "{v:?}");
    }
    assert_eq!(c.ray_weights(), BTreeMap::from([([-2, -3], 1), ([0, 1], 3), ([1, 0], 2)]));
}

#[test]
fn degenerate_inputs() {
    assert!(matches!(tropicalize_curve(&LaurentPoly::zero(2)), Err(CurveError::ZeroPolynomial)));
    assert!(matches!(tropicalize_curve(&LaurentPoly::var(2, 0)), Err(CurveError::Monomial)));
    assert!(matches!(tropicalize_curve(&LaurentPoly::var(3, 0)), Err(CurveError::NotBivariate(_))));
}

#[test]
fn collinear_support_gives_lines() {
    // 1 + x + t x² : lines x = 0 and x = 1 (min convention, val(t) = 1)
    let f = poly(&[
        ([0, 0], PuiseuxCoeff::one()),
        ([1, 0], PuiseuxCoeff::one()),
        ([2, 0], PuiseuxCoeff::monomial(int(1), int(1))),
    ]);
    let c = tropicalize_curve(&f).unwrap();
    assert!(check_balancing(&c).balanced);
    assert!(!is_connected(&c));
    for y in [int(-4), rat(7, 3)] {
        assert!(c.contains(&[int(0), y.clone()]) && c.contains(&[int(-1), y.clone()]));
        assert!(!c.contains(&[rat(-1, 2), y]));
    }
}

#[test]
fn curve_json_round_trip() {
    let c = tropicalize_curve(&weierstrass_curve(&int(0), &int(1))).unwrap();
    let back: TropPlaneCurve = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
    let bad = r#"{"vertices":[["0","0"]],"edges":[],"rays":[{"base":0,"dir":[2,0],"weight":1}]}"#;
    assert!(serde_json::from_str::<TropPlaneCurve>(bad).is_err());
}

#[test]
fn quartic_supports_are_balanced() {
    for seed in 0..100 {
        let f = random_support_poly(seed, 4, 9);
        let pts = support_points(&f);
        if pts.len() < 2 {
            continue;
        }
        let c = tropicalize_curve(&f).unwrap();
        let r = check_balancing(&c);
        assert!(r.balanced, "seed {seed}: {:?}", r.violations);
        if !is_collinear(&pts) {
            assert!(is_connected(&c), "seed {seed}");
            assert_eq!(c.ray_weights(), expected_rays(&pts), "seed {seed}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Vertices and edge midpoints lie on the corner locus.
    #[test]
    fn points_on_corner_locus(seed in any::<u64>(), d in 1i64..4, terms in 3usize..8) {
        let f = random_support_poly(seed, d, terms);
        let support = lifted_support(&f).unwrap();
        prop_assume!(support.len() >= 2);
        let c = tropicalize_curve(&f).unwrap();
        for v in &c.vertices {
            prop_assert!(corner_locus(&support, v));
        }
        let two = Rational::from_integer(2.into());
        for e in &c.edges {
            let (p, q) = (&c.vertices[e.a], &c.vertices[e.b]);
            let mid = [(&p[0] + &q[0]) / &two, (&p[1] + &q[1]) / &two];
            prop_assert!(corner_locus(&support, &mid));
        }
        for r in &c.rays {
            let p = &c.vertices[r.base];
            let far = [&p[0] + int(r.dir[0]), &p[1] + int(r.dir[1])];
            prop_assert!(corner_locus(&support, &far));
        }
    }
}
