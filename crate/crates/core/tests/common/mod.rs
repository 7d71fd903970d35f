//! Independent oracles shared by the integration tests. None of these call
//! into the code paths they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use tropgrass::arith::{rat, Rational};
use tropgrass::phylo::{DistVector, PhyloTree};
use tropgrass::sampling::random_binary_shape;
use tropgrass::skeleton::{GraphEdge, GraphRay, MetricGraph, PLFunction};

/// A random `2 × n` rational matrix with all maximal minors nonzero.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Vec<[Rational; 2]> {
    loop {
        let m: Vec<[Rational; 2]> = (0..n)
            .map(|_| {
                [rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))]
            })
            .collect();
        if (1..=n).all(|a| (a + 1..=n).all(|b| !minor(&m, a, b).is_zero())) {
            return m;
        }
    }
}

/// The Plücker coordinate `p_ab` of a `2 × n` matrix given by columns.
pub fn minor(m: &[[Rational; 2]], a: usize, b: usize) -> Rational {
    &m[a - 1][0] * &m[b - 1][1] - &m[a - 1][1] * &m[b - 1][0]
}

/// Leaf-to-leaf path lengths by breadth-first search from each leaf.
pub fn path_sum_distances(t: &PhyloTree) -> DistVector {
    let n = t.n();
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); t.num_nodes()];
    for e in t.edges() {
        adj[e.a].push((e.b, e.w.clone()));
        adj[e.b].push((e.a, e.w.clone()));
    }
    let mut dist = BTreeMap::new();
    for i in 1..=n {
        let mut d: Vec<Option<Rational>> = vec![None; t.num_nodes()];
        let s = t.leaf_node(i);
        d[s] = Some(Rational::zero());
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let dv = d[v].clone().unwrap();
            for (w, len) in &adj[v] {
                if d[*w].is_none() {
                    d[*w] = Some(&dv + len);
                    queue.push_back(*w);
                }
            }
        }
        for j in i + 1..=n {
            dist.insert((i, j), d[t.leaf_node(j)].clone().unwrap());
        }
    }
    DistVector::from_fn(n, |i, j| dist[&(i, j)].clone()).unwrap()
}

/// Four-point condition in the log convention, scanned over all quartets.
pub fn quartet_oracle(x: &DistVector) -> bool {
    let n = x.n();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    let mut s = [x.get(a, b) + x.get(c, d), x.get(a, c) + x.get(b, d), x.get(a, d) + x.get(b, c)];
                    s.sort();
                    if s[1] != s[2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether `min_α (h_α + α·X)` is attained at least twice.
pub fn corner_locus(points: &[([i64; 2], Rational)], x: &[Rational; 2]) -> bool {
    let vals: Vec<Rational> = points
        .iter()
        .map(|(a, h)| h + Rational::from_integer(a[0].into()) * &x[0] + Rational::from_integer(a[1].into()) * &x[1])
        .collect();
    let m = vals.iter().min().unwrap();
    vals.iter().filter(|v| *v == m).count() >= 2
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Sides of the convex hull of `pts` as `(p, q, inward normal)`, found by
/// brute force: a pair spans a side iff every point is weakly on one side and
/// `p`, `q` are the extreme points on that line.
pub fn hull_sides(pts: &[[i64; 2]]) -> Vec<([i64; 2], [i64; 2], [i64; 2])> {
    let mut out = Vec::new();
    for &p in pts {
        for &q in pts {
            if p >= q {
                continue;
            }
            let sides: Vec<i64> = pts.iter().map(|&r| cross(p, q, r).signum()).collect();
            let side = if sides.iter().all(|&s| s >= 0) {
                1
            } else if sides.iter().all(|&s| s <= 0) {
                -1
            } else {
                continue;
            };
            if sides.iter().all(|&s| s == 0) {
                continue;
            }
            // extremes on the line
            let on: Vec<[i64; 2]> = pts.iter().copied().filter(|&r| cross(p, q, r) == 0).collect();
            if on.iter().min() != Some(&p) || on.iter().max() != Some(&q) {
                continue;
            }
            let d = [q[0] - p[0], q[1] - p[1]];
            let g = gcd(d[0], d[1]);
            let normal = [-d[1] / g * side, d[0] / g * side];
            out.push((p, q, normal));
        }
    }
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Whether the integer point `w` lies in the convex hull of `verts`
/// (which may be degenerate).
pub fn in_hull(verts: &[[i64; 2]], w: [i64; 2]) -> bool {
    let mut v: Vec<[i64; 2]> = verts.to_vec();
    v.sort();
    v.dedup();
    if v.len() == 1 {
        return v[0] == w;
    }
    let collinear = v.iter().all(|&r| cross(v[0], v[1], r) == 0);
    if collinear {
        let (lo, hi) = (v[0], *v.last().unwrap());
        return cross(lo, hi, w) == 0 && lo <= w && w <= hi;
    }
    for &p in &v {
        for &q in &v {
            if p == q {
                continue;
            }
            let s: Vec<i64> = v.iter().map(|&r| cross(p, q, r)).collect();
            if s.iter().all(|&x| x >= 0) && cross(p, q, w) < 0 {
                return false;
            }
        }
    }
    true
}

/// Lattice-point bijection oracle: `A` maps the lattice points of `kP`
/// injectively onto the lattice points of `A(kP)` for `k = 1, 2, 3`, with `P`
/// the lattice polygon spanned by `verts`.
pub fn lattice_bijection(a: [[i64; 2]; 2], verts: &[[i64; 2]]) -> bool {
    let apply = |p: [i64; 2]| [a[0][0] * p[0] + a[0][1] * p[1], a[1][0] * p[0] + a[1][1] * p[1]];
    for k in 1..=3 {
        let kv: Vec<[i64; 2]> = verts.iter().map(|p| [k * p[0], k * p[1]]).collect();
        let (lo, hi) = bbox(&kv);
        let pts: Vec<[i64; 2]> =
            (lo[0]..=hi[0]).flat_map(|x| (lo[1]..=hi[1]).map(move |y| [x, y])).filter(|&p| in_hull(&kv, p)).collect();
        let mut images: Vec<[i64; 2]> = pts.iter().map(|&p| apply(p)).collect();
        images.sort();
        let before = images.len();
        images.dedup();
        if images.len() != before {
            return false;
        }
        let iv: Vec<[i64; 2]> = kv.iter().map(|&p| apply(p)).collect();
        let (lo, hi) = bbox(&iv);
        let count =
            (lo[0]..=hi[0]).flat_map(|x| (lo[1]..=hi[1]).map(move |y| [x, y])).filter(|&w| in_hull(&iv, w)).count();
        if count != images.len() {
            return false;
        }
    }
    true
}

fn bbox(v: &[[i64; 2]]) -> ([i64; 2], [i64; 2]) {
    let lo = [v.iter().map(|p| p[0]).min().unwrap(), v.iter().map(|p| p[1]).min().unwrap()];
    let hi = [v.iter().map(|p| p[0]).max().unwrap(), v.iter().map(|p| p[1]).max().unwrap()];
    (lo, hi)
}

/// A random metric tree with `leaves ≥ 4` rays and random integer (or
/// half-integer, if `halves`) edge lengths.
pub fn random_metric_tree<R: Rng>(rng: &mut R, leaves: usize, halves: bool) -> MetricGraph {
    let shape = random_binary_shape(rng, leaves);
    let name = |v: usize| format!("v{v}");
    let mut vertices: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for v in leaves..shape.len() + 1 {
        vertices.push(name(v));
    }
    for (a, b) in shape {
        if a < leaves || b < leaves {
            let (leaf, base) = if a < leaves { (a, b) } else { (b, a) };
            rays.push(GraphRay { base: name(base), id: format!("r{}", leaf + 1) });
        } else {
            let len = if halves { rat(rng.gen_range(1..=8), 2) } else { rat(rng.gen_range(1..=5), 1) };
            edges.push(GraphEdge { a: name(a), b: name(b), len });
        }
    }
    MetricGraph::new(vertices, edges, rays).unwrap()
}

/// Distances from `src` to every vertex of a metric tree.
pub fn graph_distances(g: &MetricGraph, src: &str) -> BTreeMap<String, Rational> {
    let mut d = BTreeMap::from([(src.to_string(), Rational::zero())]);
    let mut queue = VecDeque::from([src.to_string()]);
    while let Some(v) = queue.pop_front() {
        let dv = d[&v].clone();
        for e in g.edges() {
            let w = if e.a == v {
                &e.b
            } else if e.b == v {
                &e.a
            } else {
                continue;
            };
            if !d.contains_key(w) {
                d.insert(w.clone(), &dv + &e.len);
                queue.push_back(w.clone());
            }
        }
    }
    d
}

/// `Σ m_ρ b_ρ` for Busemann functions `b_ρ = d(·, base of ρ)` towards ray
/// ends, with `Σ m_ρ = 0`; balanced everywhere on a tree.
pub fn busemann_combination(g: &MetricGraph, m: &BTreeMap<String, i64>) -> PLFunction {
    assert_eq!(m.values().sum::<i64>(), 0);
    let mut values: BTreeMap<String, Rational> = g.vertices().iter().map(|v| (v.clone(), Rational::zero())).collect();
    for r in g.rays() {
        let d = graph_distances(g, &r.base);
        for (v, x) in values.iter_mut() {
            *x += Rational::from_integer(m[&r.id].into()) * &d[v];
        }
    }
    // outgoing slope on ray ρ': −1 from b_ρ', +1 from every other b_ρ
    let slopes = g.rays().iter().map(|r| (r.id.clone(), BigInt::from(-2 * m[&r.id]))).collect();
    PLFunction::new(g, values, slopes).unwrap()
}

/// Random integer multiplicities on the rays summing to zero, not all zero.
pub fn random_multiplicities<R: Rng>(rng: &mut R, g: &MetricGraph) -> BTreeMap<String, i64> {
    loop {
        let ids: Vec<String> = g.rays().iter().map(|r| r.id.clone()).collect();
        let mut m: BTreeMap<String, i64> = ids.iter().map(|id| (id.clone(), rng.gen_range(-3..=3))).collect();
        let total: i64 = m.values().sum();
        *m.get_mut(&ids[0]).unwrap() -= total;
        if m.values().any(|&x| x != 0) {
            return m;
        }
    }
}
