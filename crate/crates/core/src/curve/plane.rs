use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{LaurentPoly, QStr, Rational};

use super::subdivision::{lattice_length, lifted_support, NewtonSubdivision, Pt};
use super::CurveError;

/// A bounded edge between two vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEdge {
    pub a: usize,
    pub b: usize,
    pub weight: i64,
}

/// A ray from a vertex in a primitive integer direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRay {
    pub base: usize,
    pub dir: [i64; 2],
    pub weight: i64,
}

/// A weighted rational polyhedral 1-complex in `R²` (min convention).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveDoc", into = "CurveDoc")]
pub struct TropPlaneCurve {
    pub vertices: Vec<[Rational; 2]>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<CurveRay>,
}

fn primitive(d: Pt) -> Pt {
    let g = d[0].gcd(&d[1]);
    [d[0] / g, d[1] / g]
}

/// Tropicalizes `f` in two variables: the corner locus of
/// `X ↦ min_α (val(c_α) + α·X)`, built as the dual of the Newton subdivision.
///
/// A vertex sits at `−μ` for each cell with lower plane `h = λ + μ·α`. A
/// Newton edge shared by two cells becomes a bounded edge; a boundary edge
/// becomes a ray pointing along the inward normal of its cell. Weights are
/// lattice lengths. For collinear support each lower segment gives a line,
/// stored as a vertex on it with two opposite rays.
pub fn tropicalize_curve(f: &LaurentPoly) -> Result<TropPlaneCurve, CurveError> {
    let sub = NewtonSubdivision::new(lifted_support(f)?)?;
    Ok(dual_curve(&sub))
}

pub fn dual_curve(sub: &NewtonSubdivision) -> TropPlaneCurve {
    if sub.one_dimensional {
        return dual_lines(sub);
    }
    let vertices: Vec<[Rational; 2]> = sub.slopes.iter().map(|m| [-m[0].clone(), -m[1].clone()]).collect();
    // unordered Newton edge -> (cells containing it, inward normal in the first one)
    let mut owners: BTreeMap<(Pt, Pt), Vec<(usize, Pt)>> = BTreeMap::new();
    for c in 0..sub.cells.len() {
        let poly = sub.cell_polygon(c);
        for k in 0..poly.len() {
            let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
            let d = [q[0] - p[0], q[1] - p[1]];
            owners.entry((p.min(q), p.max(q))).or_default().push((c, primitive([-d[1], d[0]])));
        }
    }
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for ((p, q), cs) in owners {
        let weight = lattice_length(p, q);
        match cs.as_slice() {
            [(c, dir)] => rays.push(CurveRay { base: *c, dir: *dir, weight }),
            [(a, _), (b, _)] => edges.push(CurveEdge { a: *a, b: *b, weight }),
            _ => unreachable!("a Newton edge lies in at most two cells"),
        }
    }
    TropPlaneCurve { vertices, edges, rays }
}

fn dual_lines(sub: &NewtonSubdivision) -> TropPlaneCurve {
    let mut c = TropPlaneCurve { vertices: Vec::new(), edges: Vec::new(), rays: Vec::new() };
    for cell in &sub.cells {
        let ((a, ha), (b, hb)) = (&sub.points[cell[0]], &sub.points[cell[1]]);
        let d = [b[0] - a[0], b[1] - a[1]];
        // the line (b − a)·X = h_a − h_b, through t·(b − a)
        let norm2 = Rational::from_integer((d[0] * d[0] + d[1] * d[1]).into());
        let t = (ha - hb) / norm2;
        let v = c.vertices.len();
        c.vertices.push([&t * Rational::from_integer(d[0].into()), &t * Rational::from_integer(d[1].into())]);
        let dir = primitive([-d[1], d[0]]);
        let weight = lattice_length(*a, *b);
        c.rays.push(CurveRay { base: v, dir, weight });
        c.rays.push(CurveRay { base: v, dir: [-dir[0], -dir[1]], weight });
    }
    c
}

/// Per-vertex result of the balancing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub vertices_checked: usize,
    pub violations: Vec<BalanceViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceViolation {
    pub vertex: usize,
    pub sum: [i64; 2],
}

/// The primitive integer vector pointing from `p` to `q`.
fn primitive_between(p: &[Rational; 2], q: &[Rational; 2]) -> [BigInt; 2] {
    let d = [&q[0] - &p[0], &q[1] - &p[1]];
    let l = d[0].denom().lcm(d[1].denom());
    let ints =
        [(&d[0] * Rational::from_integer(l.clone())).to_integer(), (&d[1] * Rational::from_integer(l)).to_integer()];
    let g = ints[0].gcd(&ints[1]);
    if g.is_zero() {
        return ints;
    }
    [&ints[0] / &g, &ints[1] / &g]
}

/// Checks `Σ weight · primitive outgoing direction = 0` at every vertex.
pub fn check_balancing(c: &TropPlaneCurve) -> BalanceReport {
    let mut sums = vec![[BigInt::zero(), BigInt::zero()]; c.vertices.len()];
    for e in &c.edges {
        let w = BigInt::from(e.weight);
        let d = primitive_between(&c.vertices[e.a], &c.vertices[e.b]);
        for (k, dk) in d.iter().enumerate() {
            sums[e.a][k] += &w * dk;
            sums[e.b][k] -= &w * dk;
        }
    }
    for r in &c.rays {
        for (s, &dk) in sums[r.base].iter_mut().zip(&r.dir) {
            *s += BigInt::from(r.weight) * BigInt::from(dk);
        }
    }
    let violations: Vec<BalanceViolation> = sums
        .iter()
        .enumerate()
        .filter(|(_, s)| !(s[0].is_zero() && s[1].is_zero()))
        .map(|(vertex, s)| BalanceViolation {
            vertex,
            sum: [i64::try_from(&s[0]).unwrap_or(i64::MAX), i64::try_from(&s[1]).unwrap_or(i64::MAX)],
        })
        .collect();
    BalanceReport { balanced: violations.is_empty(), vertices_checked: c.vertices.len(), violations }
}

impl TropPlaneCurve {
    fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut comps = n;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    /// Total weight of rays per primitive direction.
    pub fn ray_weights(&self) -> BTreeMap<[i64; 2], i64> {
        let mut m = BTreeMap::new();
        for r in &self.rays {
            *m.entry(r.dir).or_insert(0) += r.weight;
        }
        m
    }

    /// Whether `x` lies on an edge, a ray, or is a vertex.
    pub fn contains(&self, x: &[Rational; 2]) -> bool {
        let on_segment = |p: &[Rational; 2], d: [Rational; 2], bounded: bool| {
            let w = [&x[0] - &p[0], &x[1] - &p[1]];
            if !(&w[0] * &d[1] - &w[1] * &d[0]).is_zero() {
                return false;
            }
            let dd = &d[0] * &d[0] + &d[1] * &d[1];
            let t = (&w[0] * &d[0] + &w[1] * &d[1]) / dd;
            !t.is_negative() && (!bounded || t <= Rational::one())
        };
        self.vertices.iter().any(|v| v == x)
            || self.edges.iter().any(|e| {
                let (p, q) = (&self.vertices[e.a], &self.vertices[e.b]);
                on_segment(p, [&q[0] - &p[0], &q[1] - &p[1]], true)
            })
            || self.rays.iter().any(|r| {
                let d = [Rational::from_integer(r.dir[0].into()), Rational::from_integer(r.dir[1].into())];
                on_segment(&self.vertices[r.base], d, false)
            })
    }
}

/// Connectivity of the 1-complex; rays do not join vertices.
pub fn is_connected(c: &TropPlaneCurve) -> bool {
    c.components() <= 1
}

/// Connected with no cycles among bounded edges.
pub fn is_tree(c: &TropPlaneCurve) -> bool {
    is_connected(c) && c.edges.len() + 1 == c.vertices.len().max(1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveDoc {
    pub vertices: Vec<[QStr; 2]>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<CurveRay>,
}

impl TryFrom<CurveDoc> for TropPlaneCurve {
    type Error = CurveError;

    fn try_from(d: CurveDoc) -> Result<Self, CurveError> {
        let n = d.vertices.len();
        let bad = |m: &str| Err(CurveError::Malformed(m.into()));
        for e in &d.edges {
            if e.a >= n || e.b >= n || e.a == e.b {
                return bad("edge endpoint out of range");
            }
            if e.weight <= 0 {
                return bad("weights must be positive");
            }
        }
        for r in &d.rays {
            if r.base >= n {
                return bad("ray base out of range");
            }
            if r.weight <= 0 {
                return bad("weights must be positive");
            }
            if r.dir[0].gcd(&r.dir[1]) != 1 {
                return bad("ray direction is not primitive");
            }
        }
        Ok(TropPlaneCurve {
            vertices: d.vertices.into_iter().map(|[x, y]| [x.0, y.0]).collect(),
            edges: d.edges,
            rays: d.rays,
        })
    }
}

impl From<TropPlaneCurve> for CurveDoc {
    fn from(c: TropPlaneCurve) -> Self {
        CurveDoc {
            vertices: c.vertices.into_iter().map(|[x, y]| [QStr(x), QStr(y)]).collect(),
            edges: c.edges,
            rays: c.rays,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, PuiseuxCoeff};

    fn line() -> LaurentPoly {
        let one = PuiseuxCoeff::one();
        LaurentPoly::from_i64_terms(2, &[(&[1, 0], one.clone()), (&[0, 1], one.clone()), (&[0, 0], one)]).unwrap()
    }

    #[test]
    fn tropical_line() {
        let c = tropicalize_curve(&line()).unwrap();
        assert_eq!(c.vertices, vec![[int(0), int(0)]]);
        let dirs: BTreeMap<[i64; 2], i64> = c.ray_weights();
        assert_eq!(dirs, BTreeMap::from([([1, 0], 1), ([0, 1], 1), ([-1, -1], 1)]));
        assert!(check_balancing(&c).balanced);
        assert!(is_connected(&c) && is_tree(&c));
        assert!(c.contains(&[int(0), int(5)]));
        assert!(c.contains(&[int(-2), int(-2)]));
        assert!(!c.contains(&[int(1), int(1)]));
    }

    #[test]
    fn monomial_rejected() {
        let f = LaurentPoly::var(2, 0);
        assert_eq!(tropicalize_curve(&f), Err(CurveError::Monomial));
    }

    #[test]
    fn unbalanced_vertex_reported() {
        let c = TropPlaneCurve {
            vertices: vec![[int(0), int(0)]],
            edges: vec![],
            rays: vec![CurveRay { base: 0, dir: [1, 0], weight: 1 }, CurveRay { base: 0, dir: [0, 1], weight: 1 }],
        };
        let r = check_balancing(&c);
        assert!(!r.balanced);
        assert_eq!(r.violations, vec![BalanceViolation { vertex: 0, sum: [1, 1] }]);
        let two = TropPlaneCurve { vertices: vec![[int(0), int(0)], [int(1), int(0)]], edges: vec![], rays: vec![] };
        assert!(!is_connected(&two));
    }

    #[test]
    fn conic_with_bounded_edge() {
        // 1 + x + y + t·xy: two triangles sharing the diagonal from (1,0) to (0,1)
        let t = PuiseuxCoeff::monomial(int(1), int(1));
        let one = PuiseuxCoeff::one();
        let f = LaurentPoly::from_i64_terms(
            2,
            &[(&[0, 0], one.clone()), (&[1, 0], one.clone()), (&[0, 1], one), (&[1, 1], t)],
        )
        .unwrap();
        let c = tropicalize_curve(&f).unwrap();
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.edges.len(), 1);
        assert_eq!(c.rays.len(), 4);
        assert!(check_balancing(&c).balanced);
        assert!(is_tree(&c));
        assert!(c.vertices.contains(&[int(0), int(0)]) && c.vertices.contains(&[int(-1), int(-1)]));
        assert!(c.contains(&[rat(-1, 2), rat(-1, 2)]));
    }

    #[test]
    fn parallel_lines() {
        // (x − 1)(x − t) in valuation terms: x² + x + t
        let f = LaurentPoly::from_i64_terms(
            2,
            &[
                (&[2, 0], PuiseuxCoeff::one()),
                (&[1, 0], PuiseuxCoeff::one()),
                (&[0, 0], PuiseuxCoeff::monomial(int(1), int(1))),
            ],
        )
        .unwrap();
        let c = tropicalize_curve(&f).unwrap();
        assert_eq!(c.vertices.len(), 2);
        assert!(c.contains(&[int(0), int(7)]) && c.contains(&[int(1), int(-3)]));
        assert!(check_balancing(&c).balanced);
        assert!(!is_connected(&c));
    }

    #[test]
    fn json_round_trip() {
        let c = tropicalize_curve(&line()).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<TropPlaneCurve>(&s).unwrap(), c);
        let bad = r#"{"vertices":[["0","0"]],"edges":[],"rays":[{"base":0,"dir":[2,0],"weight":1}]}"#;
        assert!(serde_json::from_str::<TropPlaneCurve>(bad).is_err());
    }
}
