use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{QStr, Rational, ZInt};

use super::fm::{eliminate, Ineq};
use super::lattice::{mat_mul, smith_invariants};
use super::polyhedron::{Constraint, GammaPolyhedron};
use super::AffineError;

/// `v ↦ A v + b` with `A` an integer `m × n` matrix and `b ∈ Qᵐ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapDoc", into = "MapDoc")]
pub struct GammaAffineMap {
    a: Vec<Vec<BigInt>>,
    b: Vec<Rational>,
    cols: usize,
}

impl GammaAffineMap {
    pub fn new(a: Vec<Vec<BigInt>>, b: Vec<Rational>) -> Result<Self, AffineError> {
        let cols = a.first().map_or(0, Vec::len);
        if a.is_empty() || cols == 0 || a.iter().any(|r| r.len() != cols) {
            return Err(AffineError::BadMatrix);
        }
        if b.len() != a.len() {
            return Err(AffineError::DimMismatch { expected: a.len(), got: b.len() });
        }
        Ok(GammaAffineMap { a, b, cols })
    }

    pub fn linear(a: &[&[i64]]) -> Result<Self, AffineError> {
        let m = a.len();
        Self::new(a.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect(), vec![Rational::zero(); m])
    }

    pub fn identity(n: usize) -> Self {
        let a = (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        GammaAffineMap { a, b: vec![Rational::zero(); n], cols: n }
    }

    pub fn source_dim(&self) -> usize {
        self.cols
    }

    pub fn target_dim(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.a
    }

    pub fn shift(&self) -> &[Rational] {
        &self.b
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, AffineError> {
        if v.len() != self.cols {
            return Err(AffineError::DimMismatch { expected: self.cols, got: v.len() });
        }
        Ok(self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, b)| row.iter().zip(v).map(|(x, y)| Rational::from_integer(x.clone()) * y).sum::<Rational>() + b)
            .collect())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GammaAffineMap) -> Result<GammaAffineMap, AffineError> {
        if inner.target_dim() != self.cols {
            return Err(AffineError::DimMismatch { expected: self.cols, got: inner.target_dim() });
        }
        let a = mat_mul(&self.a, &inner.a, self.cols, inner.cols);
        let b = self.apply(&inner.b)?;
        GammaAffineMap::new(a, b)
    }

    /// The image `F(P)`, by eliminating the source variables from
    /// `{(v, w) : v ∈ P, w = A v + b}`. Each resulting constraint is scaled to
    /// a primitive integral normal.
    pub fn image(&self, p: &GammaPolyhedron) -> Result<GammaPolyhedron, AffineError> {
        let (n, m) = (self.cols, self.target_dim());
        if p.dim() != n {
            return Err(AffineError::DimMismatch { expected: n, got: p.dim() });
        }
        let q = |x: &BigInt| Rational::from_integer(x.clone());
        let mut sys: Vec<Ineq> = p
            .constraints()
            .iter()
            .map(|c| {
                let mut a: Vec<Rational> = c.u.iter().map(q).collect();
                a.resize(n + m, Rational::zero());
                Ineq { a, c: c.gamma.clone(), strict: false }
            })
            .collect();
        for (r, (row, b)) in self.a.iter().zip(&self.b).enumerate() {
            // w_r − A_r v − b_r = 0 as two inequalities
            let mut a: Vec<Rational> = row.iter().map(|x| -q(x)).collect();
            a.resize(n + m, Rational::zero());
            a[n + r] = Rational::one();
            sys.push(Ineq { a: a.clone(), c: -b.clone(), strict: false });
            sys.push(Ineq { a: a.into_iter().map(|x| -x).collect(), c: b.clone(), strict: false });
        }
        for k in 0..n {
            sys = eliminate(&sys, k);
        }
        let mut cs: Vec<Constraint> = Vec::new();
        for ineq in sys {
            let coeffs = &ineq.a[n..];
            if coeffs.iter().all(Zero::is_zero) {
                continue;
            }
            let l = coeffs.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let ints: Vec<BigInt> =
                coeffs.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            let scale = Rational::new(l, g.clone());
            let c = Constraint::new(ints.into_iter().map(|x| x / &g).collect(), ineq.c * scale);
            if !cs.contains(&c) {
                cs.push(c);
            }
        }
        GammaPolyhedron::new(m, cs)
    }
}

/// Whether `F` restricted to `P` is injective with an integral Γ-affine
/// inverse on `F(P)`.
///
/// With `B` a basis of the direction lattice of `P`, this holds iff `A B` has
/// full column rank (injectivity on the affine hull) and all its Smith
/// invariant factors are 1, i.e. `A` maps the lattice onto the saturated
/// lattice of the image.
pub fn unimodular_on(f: &GammaAffineMap, p: &GammaPolyhedron) -> Result<bool, AffineError> {
    if p.dim() != f.source_dim() {
        return Err(AffineError::DimMismatch { expected: f.source_dim(), got: p.dim() });
    }
    let basis = p.direction_lattice();
    let k = basis.len();
    if k == 0 {
        return Ok(true);
    }
    let cols: Vec<Vec<BigInt>> = (0..f.source_dim()).map(|i| basis.iter().map(|z| z[i].clone()).collect()).collect();
    let ab = mat_mul(f.matrix(), &cols, f.source_dim(), k);
    let inv = smith_invariants(&ab);
    Ok(inv.len() == k && inv.iter().all(|d| d.abs().is_one()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDoc {
    #[serde(rename = "A")]
    pub a: Vec<Vec<ZInt>>,
    pub b: Vec<QStr>,
}

impl TryFrom<MapDoc> for GammaAffineMap {
    type Error = AffineError;

    fn try_from(d: MapDoc) -> Result<Self, AffineError> {
        GammaAffineMap::new(
            d.a.into_iter().map(|r| r.into_iter().map(|z| z.0).collect()).collect(),
            d.b.into_iter().map(|q| q.0).collect(),
        )
    }
}

impl From<GammaAffineMap> for MapDoc {
    fn from(f: GammaAffineMap) -> Self {
        MapDoc {
            a: f.a.into_iter().map(|r| r.into_iter().map(ZInt).collect()).collect(),
            b: f.b.into_iter().map(QStr).collect(),
        }
    }
}
