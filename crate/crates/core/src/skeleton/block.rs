use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{Constraint, GammaPolyhedron};
use crate::arith::{LaurentPoly, QStr, Rational, TropNum};

use super::SkeletonError;

/// The standard pair `Spf K°⟨x₀,…,x_d⟩ / (x₀⋯x_r − π)` with horizontal divisor
/// `x_{r+1}⋯x_{r+s}`, recorded by its numerical data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BlockDoc", into = "BlockDoc")]
pub struct StandardBlock {
    d: usize,
    r: usize,
    s: usize,
    vpi: Rational,
}

impl StandardBlock {
    pub fn new(d: usize, r: usize, s: usize, vpi: Rational) -> Result<Self, SkeletonError> {
        if r + s > d {
            return Err(SkeletonError::BadBlock(format!("r + s = {} exceeds d = {d}", r + s)));
        }
        if !vpi.is_positive() {
            return Err(SkeletonError::BadBlock("v(π) must be positive".into()));
        }
        Ok(StandardBlock { d, r, s, vpi })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn vpi(&self) -> &Rational {
        &self.vpi
    }

    /// Dimension of the skeleton, `r + s`.
    pub fn skeleton_dim(&self) -> usize {
        self.r + self.s
    }
}

/// The skeleton `Δ(r,π) × R^s_{≥0}` in projected coordinates:
/// `Σ = {v ≥ 0, v₁ + … + v_r ≤ v(π)} ⊂ R^{r+s}`.
pub fn block_polytope(b: &StandardBlock) -> Result<GammaPolyhedron, SkeletonError> {
    let n = b.skeleton_dim();
    if n == 0 {
        return Err(SkeletonError::PointSkeleton);
    }
    let mut cs: Vec<Constraint> = (0..n)
        .map(|k| Constraint::new((0..n).map(|t| BigInt::from((t == k) as i64)).collect(), Rational::zero()))
        .collect();
    if b.r > 0 {
        let u = (0..n).map(|t| if t < b.r { -BigInt::one() } else { BigInt::zero() }).collect();
        cs.push(Constraint::new(u, b.vpi.clone()));
    }
    Ok(GammaPolyhedron::new(n, cs).expect("contains the origin"))
}

/// A point of `Σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPoint {
    pub v: Vec<Rational>,
}

impl BlockPoint {
    pub fn new(b: &StandardBlock, v: Vec<Rational>) -> Result<Self, SkeletonError> {
        if v.len() != b.skeleton_dim() {
            return Err(SkeletonError::DimMismatch { expected: b.skeleton_dim(), got: v.len() });
        }
        let simplex: Rational = v[..b.r].iter().sum();
        if v.iter().any(Signed::is_negative) || simplex > b.vpi {
            return Err(SkeletonError::OutsideSkeleton);
        }
        Ok(BlockPoint { v })
    }

    /// The dropped coordinate `v₀ = v(π) − (v₁ + … + v_r)`.
    pub fn v0(&self, b: &StandardBlock) -> Rational {
        &b.vpi - self.v[..b.r].iter().sum::<Rational>()
    }
}

/// Valuation of `f` at the Gauss point `σ(v)`:
/// `min_I (val(a_I) + Σ_{t ≤ r+s} i_t v_t)`. Variables beyond `r + s` have
/// norm 1 and contribute nothing.
pub fn block_sigma_eval(b: &StandardBlock, v: &BlockPoint, f: &LaurentPoly) -> Result<TropNum, SkeletonError> {
    if f.nvars() != b.d {
        return Err(SkeletonError::DimMismatch { expected: b.d, got: f.nvars() });
    }
    if f.has_negative_exponents() {
        return Err(SkeletonError::NegativeExponent);
    }
    let v = BlockPoint::new(b, v.v.clone())?;
    let mut r: Vec<TropNum> = v.v.into_iter().map(TropNum::Finite).collect();
    r.resize(b.d, TropNum::zero());
    Ok(f.gauss_eval(&r)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockDoc {
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub vpi: QStr,
}

impl TryFrom<BlockDoc> for StandardBlock {
    type Error = SkeletonError;

    fn try_from(d: BlockDoc) -> Result<Self, SkeletonError> {
        StandardBlock::new(d.d, d.r, d.s, d.vpi.0)
    }
}

impl From<StandardBlock> for BlockDoc {
    fn from(b: StandardBlock) -> Self {
        BlockDoc { d: b.d, r: b.r, s: b.s, vpi: QStr(b.vpi) }
    }
}
