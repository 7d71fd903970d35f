use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{LaurentPoly, Rational, TropNum};

use super::CurveError;

pub type Pt = [i64; 2];

/// The regular subdivision of the Newton polygon induced by the lower hull
/// of the support points lifted by coefficient valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSubdivision {
    pub points: Vec<(Pt, Rational)>,
    /// Each cell lists indices into `points` of everything on its lower face.
    pub cells: Vec<Vec<usize>>,
    /// Slope `μ` of each cell's supporting plane `h = λ + μ·α`.
    pub slopes: Vec<[Rational; 2]>,
    /// Whether the support is collinear; cells are then segments.
    pub one_dimensional: bool,
}

fn sub(a: Pt, b: Pt) -> Pt {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    let (u, v) = (sub(a, o), sub(b, o));
    u[0] * v[1] - u[1] * v[0]
}

/// Number of lattice steps on the segment from `a` to `b`.
pub fn lattice_length(a: Pt, b: Pt) -> i64 {
    let d = sub(b, a);
    d[0].gcd(&d[1])
}

/// Extreme points of the convex hull in counter-clockwise order.
pub fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut p: Vec<Pt> = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Support points with their lifts `val(c_α)`.
pub fn lifted_support(f: &LaurentPoly) -> Result<Vec<(Pt, Rational)>, CurveError> {
    if f.nvars() != 2 {
        return Err(CurveError::NotBivariate(f.nvars()));
    }
    f.terms()
        .map(|(e, c)| {
            let x = i64::try_from(&e[0]).map_err(|_| CurveError::ExponentTooLarge)?;
            let y = i64::try_from(&e[1]).map_err(|_| CurveError::ExponentTooLarge)?;
            // exponents bounded so that cross products cannot overflow
            if x.abs() > 1 << 20 || y.abs() > 1 << 20 {
                return Err(CurveError::ExponentTooLarge);
            }
            match c.val() {
                TropNum::Finite(v) => Ok(([x, y], v)),
                TropNum::Inf => unreachable!("stored coefficients are nonzero"),
            }
        })
        .collect()
}

impl NewtonSubdivision {
    pub fn new(points: Vec<(Pt, Rational)>) -> Result<Self, CurveError> {
        match points.len() {
            0 => return Err(CurveError::ZeroPolynomial),
            1 => return Err(CurveError::Monomial),
            _ => {}
        }
        let n = points.len();
        let pts: Vec<Pt> = points.iter().map(|p| p.0).collect();
        let collinear = (2..n).all(|k| cross(pts[0], pts[1], pts[k]) == 0);
        if collinear {
            return Ok(Self::segments(points));
        }
        let mut seen = BTreeSet::new();
        let (mut cells, mut slopes) = (Vec::new(), Vec::new());
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let det = cross(pts[i], pts[j], pts[k]);
                    if det == 0 {
                        continue;
                    }
                    let (u, v) = (sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                    let (hu, hv) = (&points[j].1 - &points[i].1, &points[k].1 - &points[i].1);
                    let d = q(det);
                    let mu = [(&hu * q(v[1]) - &hv * q(u[1])) / &d, (&hv * q(u[0]) - &hu * q(v[0])) / &d];
                    let height = |l: usize| {
                        let a = sub(pts[l], pts[i]);
                        &points[l].1 - &points[i].1 - &mu[0] * q(a[0]) - &mu[1] * q(a[1])
                    };
                    let mut face = Vec::new();
                    let mut lower = true;
                    for l in 0..n {
                        let h = height(l);
                        if h.is_negative() {
                            lower = false;
                            break;
                        }
                        if h.is_zero() {
                            face.push(l);
                        }
                    }
                    if lower && seen.insert(face.clone()) {
                        cells.push(face);
                        slopes.push(mu);
                    }
                }
            }
        }
        Ok(NewtonSubdivision { points, cells, slopes, one_dimensional: false })
    }

    /// Collinear support: the lower hull is a chain of segments in the plane
    /// spanned by the line and the lift.
    fn segments(mut points: Vec<(Pt, Rational)>) -> Self {
        points.sort_by_key(|p| p.0);
        let t = |p: Pt| sub(p, points[0].0);
        let par = |p: Pt| {
            let d = t(p);
            if d[0] != 0 {
                d[0]
            } else {
                d[1]
            }
        };
        // lower convex chain in (parameter, lift) coordinates
        let mut chain: Vec<usize> = Vec::new();
        for k in 0..points.len() {
            while chain.len() >= 2 {
                let (a, b) = (chain[chain.len() - 2], chain[chain.len() - 1]);
                let (pa, pb, pk) = (q(par(points[a].0)), q(par(points[b].0)), q(par(points[k].0)));
                // drop b when it lies on or above segment a–k
                let lhs = (&points[b].1 - &points[a].1) * (&pk - &pa);
                let rhs = (&points[k].1 - &points[a].1) * (&pb - &pa);
                if lhs >= rhs {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(k);
        }
        let cells = chain.windows(2).map(|w| vec![w[0], w[1]]).collect();
        NewtonSubdivision { points, cells, slopes: Vec::new(), one_dimensional: true }
    }

    /// Hull vertices of a cell in counter-clockwise order.
    pub fn cell_polygon(&self, c: usize) -> Vec<Pt> {
        convex_hull(&self.cells[c].iter().map(|&k| self.points[k].0).collect::<Vec<_>>())
    }
}
