mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use tropgrass::arith::{int, rat, LaurentPoly, PuiseuxCoeff, Rational, TropNum};
use tropgrass::sampling::{random_laurent, rng_from_seed};
use tropgrass::skeleton::{
    block_polytope, block_sigma_eval, check_slope_formula, BlockPoint, GraphEdge, GraphRay, MetricGraph, PLFunction,
    PLFunctionDoc, SkeletonError, StandardBlock,
};

use common::{busemann_combination, random_metric_tree, random_multiplicities};

/// Nonnegative-exponent polynomial in `d` variables.
fn random_poly(seed: u64, d: usize) -> LaurentPoly {
    let f = random_laurent(&mut rng_from_seed(seed), d, 4, 0, 3, true);
    assert!(!f.has_negative_exponents());
    f
}

/// Brute-force `min_I (val(a_I) + Σ i_t v_t)` over the terms.
fn term_minimum(f: &LaurentPoly, v: &[Rational]) -> TropNum {
    f.terms()
        .map(|(e, c)| match c.val() {
            TropNum::Finite(x) => TropNum::Finite(
                x + e.iter().zip(v).map(|(i, t)| Rational::from_integer(i.clone()) * t).sum::<Rational>(),
            ),
            TropNum::Inf => TropNum::Inf,
        })
        .min()
        .unwrap_or(TropNum::Inf)
}

/// The points of `Σ` with coordinates in `{0, h, 2h, …}`.
fn grid(b: &StandardBlock, h: &Rational, steps: i64) -> Vec<BlockPoint> {
    let mut pts = vec![vec![]];
    for _ in 0..b.skeleton_dim() {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<Rational>| {
                (0..=steps).map(move |k| {
                    let mut q = p.clone();
                    q.push(h * Rational::from_integer(k.into()));
                    q
                })
            })
            .collect();
    }
    pts.into_iter().filter_map(|v| BlockPoint::new(b, v).ok()).collect()
}

#[test]
fn sigma_matches_term_minimum_on_a_grid() {
    let b = StandardBlock::new(3, 2, 1, int(2)).unwrap();
    let sigma = block_polytope(&b).unwrap();
    let pts = grid(&b, &rat(1, 2), 5);
    assert!(pts.len() > 20);
    for seed in 0..10 {
        let f = random_poly(seed, 3);
        for p in &pts {
            assert!(sigma.contains(&p.v).unwrap());
            let mut v = p.v.clone();
            v.push(int(0));
            assert_eq!(block_sigma_eval(&b, p, &f).unwrap(), term_minimum(&f, &v));
        }
    }
}

#[test]
fn block_validation() {
    assert!(StandardBlock::new(2, 2, 1, int(1)).is_err());
    assert!(StandardBlock::new(2, 1, 0, int(0)).is_err());
    let b = StandardBlock::new(2, 2, 0, rat(3, 2)).unwrap();
    assert_eq!(BlockPoint::new(&b, vec![int(1), int(1)]), Err(SkeletonError::OutsideSkeleton));
    let p = BlockPoint::new(&b, vec![int(1), rat(1, 2)]).unwrap();
    assert_eq!(p.v0(&b), int(0));
    let inv = LaurentPoly::var(2, 0).inverse().unwrap();
    assert_eq!(block_sigma_eval(&b, &p, &inv), Err(SkeletonError::NegativeExponent));
    assert!(matches!(block_polytope(&StandardBlock::new(2, 0, 0, int(1)).unwrap()), Err(SkeletonError::PointSkeleton)));
    let json: StandardBlock = serde_json::from_str(r#"{"d":3,"r":1,"s":1,"vpi":"1/2"}"#).unwrap();
    assert_eq!(json.vpi(), &rat(1, 2));
}

#[test]
fn coordinate_functions() {
    // at v the coordinate x_t has valuation v_t, and π = x₀⋯x_r gives v(π)
    let b = StandardBlock::new(2, 2, 0, int(3)).unwrap();
    let p = BlockPoint::new(&b, vec![int(1), rat(1, 2)]).unwrap();
    for t in 0..2 {
        assert_eq!(block_sigma_eval(&b, &p, &LaurentPoly::var(2, t)).unwrap(), TropNum::Finite(p.v[t].clone()));
    }
    let x1x2 = &LaurentPoly::var(2, 0) * &LaurentPoly::var(2, 1);
    let total = block_sigma_eval(&b, &p, &x1x2).unwrap();
    assert_eq!(TropNum::Finite(p.v0(&b)).otimes(&total), TropNum::Finite(int(3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_is_monotone_and_multiplicative(seed in any::<u64>(), a in 0i64..4, c in 0i64..4, dv in 0i64..3) {
        let b = StandardBlock::new(3, 1, 1, int(3)).unwrap();
        let (f, g) = (random_poly(seed, 3), random_poly(seed ^ 0x5555, 3));
        let lo = BlockPoint::new(&b, vec![rat(a.min(3), 1), int(c)]).unwrap();
        let hi = BlockPoint::new(&b, vec![rat(a.min(3), 1), int(c + dv)]).unwrap();
        let (fl, fh) = (block_sigma_eval(&b, &lo, &f).unwrap(), block_sigma_eval(&b, &hi, &f).unwrap());
        prop_assert!(fl <= fh);
        let gl = block_sigma_eval(&b, &lo, &g).unwrap();
        prop_assert_eq!(block_sigma_eval(&b, &lo, &(&f * &g)).unwrap(), fl.otimes(&gl));
        prop_assert!(block_sigma_eval(&b, &lo, &(&f + &g)).unwrap() >= fl.min(gl));
    }

    #[test]
    fn busemann_combinations_are_balanced(seed in any::<u64>(), leaves in 4usize..9) {
        let mut rng = rng_from_seed(seed);
        let g = random_metric_tree(&mut rng, leaves, true);
        let m = random_multiplicities(&mut rng, &g);
        let f = busemann_combination(&g, &m);
        prop_assert!(check_slope_formula(&g, &f).pass());
    }
}

fn line_graph() -> MetricGraph {
    let e = |a: &str, b: &str, len| GraphEdge { a: a.into(), b: b.into(), len };
    let r = |base: &str, id: &str| GraphRay { base: base.into(), id: id.into() };
    MetricGraph::new(
        vec!["a".into(), "c".into(), "b".into()],
        vec![e("a", "c", int(2)), e("c", "b", int(3))],
        vec![r("a", "left"), r("b", "right")],
    )
    .unwrap()
}

fn values(v: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    v.iter().map(|(k, x)| (k.to_string(), x.clone())).collect()
}

fn slopes(v: &[(&str, i64)]) -> BTreeMap<String, BigInt> {
    v.iter().map(|(k, x)| (k.to_string(), BigInt::from(*x))).collect()
}

#[test]
fn min_of_zero_and_shifted_coordinate() {
    // min(0, x − c) on the line, with c at vertex "c"
    let g = line_graph();
    let f = PLFunction::new(
        &g,
        values(&[("a", int(-2)), ("c", int(0)), ("b", int(0))]),
        slopes(&[("left", -1), ("right", 0)]),
    )
    .unwrap();
    let r = check_slope_formula(&g, &f);
    assert_eq!(r.violations.len(), 1);
    assert_eq!((r.violations[0].vertex.as_str(), &r.violations[0].defect), ("c", &int(-1)));

    // the zero of x − c becomes a third ray at c, along which F has slope 1
    let mut rays = g.rays().to_vec();
    rays.push(GraphRay { base: "c".into(), id: "zero".into() });
    let g3 = MetricGraph::new(g.vertices().to_vec(), g.edges().to_vec(), rays).unwrap();
    let f3 = PLFunction::new(&g3, f.values().clone(), slopes(&[("left", -1), ("right", 0), ("zero", 1)])).unwrap();
    assert!(check_slope_formula(&g3, &f3).pass());
}

#[test]
fn slopes_must_be_integral() {
    let g = line_graph();
    let err = PLFunction::new(
        &g,
        values(&[("a", int(0)), ("c", int(1)), ("b", int(1))]),
        slopes(&[("left", 0), ("right", 0)]),
    );
    assert!(matches!(err, Err(SkeletonError::NonIntegralSlope { .. })));
    let doc: PLFunctionDoc =
        serde_json::from_str(r#"{"values":{"a":"0","c":"2","b":"5"},"raySlopes":{"left":-1,"right":1}}"#).unwrap();
    let f = doc.resolve(&g).unwrap();
    let r = check_slope_formula(&g, &f);
    assert!(r.pass(), "{:?}", r.violations);
}

#[test]
fn perturbed_vertex_values_give_predicted_defects() {
    let mut rng = rng_from_seed(77);
    for _ in 0..50 {
        let g = random_metric_tree(&mut rng, 6, false);
        let f = busemann_combination(&g, &random_multiplicities(&mut rng, &g));
        let v = g.vertices()[0].clone();
        let incident: Vec<_> = g.edges().iter().filter(|e| e.a == v || e.b == v).cloned().collect();
        let delta = incident.iter().fold(int(1), |acc, e| {
            let l = e.len.to_integer();
            let a = acc.to_integer();
            Rational::from_integer(num_integer::Integer::lcm(&a, &l))
        });
        let mut vals = f.values().clone();
        *vals.get_mut(&v).unwrap() += &delta;
        let p = PLFunction::new(&g, vals, f.ray_slopes().clone()).unwrap();
        let r = check_slope_formula(&g, &p);
        let defects: BTreeMap<String, Rational> = r.violations.into_iter().map(|x| (x.vertex, x.defect)).collect();
        let mut want: BTreeMap<String, Rational> = BTreeMap::new();
        for e in &incident {
            let w = if e.a == v { &e.b } else { &e.a };
            *want.entry(v.clone()).or_insert_with(|| int(0)) -= &delta / &e.len;
            *want.entry(w.clone()).or_insert_with(|| int(0)) += &delta / &e.len;
        }
        want.retain(|_, d| d != &int(0));
        assert_eq!(defects, want);
    }
}

#[test]
fn coefficients_shift_by_their_valuation() {
    let b = StandardBlock::new(1, 1, 0, int(1)).unwrap();
    let p = BlockPoint::new(&b, vec![rat(1, 3)]).unwrap();
    let f = LaurentPoly::monomial(vec![BigInt::from(2)], PuiseuxCoeff::monomial(int(5), rat(1, 2)));
    assert_eq!(block_sigma_eval(&b, &p, &f).unwrap(), TropNum::Finite(rat(7, 6)));
}
