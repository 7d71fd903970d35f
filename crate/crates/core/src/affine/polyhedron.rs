use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, QStr, Rational, ZInt};

use super::fm::{feasible, Ineq};
use super::lattice::integer_kernel;
use super::AffineError;

/// `⟨u, v⟩ + γ ≥ 0` with `u` integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub u: Vec<BigInt>,
    pub gamma: Rational,
}

impl Constraint {
    pub fn new(u: Vec<BigInt>, gamma: Rational) -> Self {
        Constraint { u, gamma }
    }

    pub fn from_i64(u: &[i64], gamma: Rational) -> Self {
        Constraint { u: u.iter().map(|&x| x.into()).collect(), gamma }
    }

    pub fn value(&self, v: &[Rational]) -> Rational {
        self.u.iter().zip(v).map(|(a, x)| Rational::from_integer(a.clone()) * x).sum::<Rational>() + &self.gamma
    }

    fn ineq(&self, strict: bool) -> Ineq {
        Ineq { a: self.u.iter().map(|x| Rational::from_integer(x.clone())).collect(), c: self.gamma.clone(), strict }
    }
}

/// A nonempty integral Γ-affine polyhedron `{v ∈ Rⁿ : ⟨u,v⟩ + γ ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyhedronDoc", into = "PolyhedronDoc")]
pub struct GammaPolyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl GammaPolyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self, AffineError> {
        if dim == 0 {
            return Err(AffineError::ZeroDimension);
        }
        if let Some(c) = constraints.iter().find(|c| c.u.len() != dim) {
            return Err(AffineError::DimMismatch { expected: dim, got: c.u.len() });
        }
        let p = GammaPolyhedron { dim, constraints };
        if !feasible(&p.system(None)) {
            return Err(AffineError::Empty);
        }
        Ok(p)
    }

    /// The box `[0,1]ⁿ`.
    pub fn unit_cube(dim: usize) -> Self {
        let mut cs = Vec::new();
        for k in 0..dim {
            let mut e = vec![BigInt::zero(); dim];
            e[k] = 1.into();
            cs.push(Constraint::new(e.clone(), int(0)));
            cs.push(Constraint::new(e.into_iter().map(|x| -x).collect(), int(1)));
        }
        GammaPolyhedron::new(dim, cs).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    fn system(&self, strict: Option<usize>) -> Vec<Ineq> {
        self.constraints.iter().enumerate().map(|(k, c)| c.ineq(strict == Some(k))).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, AffineError> {
        if v.len() != self.dim {
            return Err(AffineError::DimMismatch { expected: self.dim, got: v.len() });
        }
        Ok(self.constraints.iter().all(|c| !c.value(v).is_negative()))
    }

    /// Constraints that hold with equality on all of the polyhedron.
    pub fn implicit_equalities(&self) -> Vec<&Constraint> {
        (0..self.constraints.len())
            .filter(|&k| !feasible(&self.system(Some(k))))
            .map(|k| &self.constraints[k])
            .collect()
    }

    /// A basis of the saturated lattice `Zⁿ ∩ (aff P − aff P)`.
    pub fn direction_lattice(&self) -> Vec<Vec<BigInt>> {
        let rows: Vec<Vec<BigInt>> = self.implicit_equalities().into_iter().map(|c| c.u.clone()).collect();
        integer_kernel(&rows, self.dim)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub u: Vec<ZInt>,
    pub gamma: QStr,
}

/// JSON layout `{dim, constraints: [{u, gamma}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyhedronDoc {
    pub dim: usize,
    pub constraints: Vec<ConstraintDoc>,
}

impl TryFrom<PolyhedronDoc> for GammaPolyhedron {
    type Error = AffineError;

    fn try_from(d: PolyhedronDoc) -> Result<Self, AffineError> {
        let cs = d
            .constraints
            .into_iter()
            .map(|c| Constraint { u: c.u.into_iter().map(|z| z.0).collect(), gamma: c.gamma.0 })
            .collect();
        GammaPolyhedron::new(d.dim, cs)
    }
}

impl From<GammaPolyhedron> for PolyhedronDoc {
    fn from(p: GammaPolyhedron) -> Self {
        PolyhedronDoc {
            dim: p.dim,
            constraints: p
                .constraints
                .into_iter()
                .map(|c| ConstraintDoc { u: c.u.into_iter().map(ZInt).collect(), gamma: QStr(c.gamma) })
                .collect(),
        }
    }
}
