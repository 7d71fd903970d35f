//! Tropical plane curves in the valuation (min-plus) convention, computed by
//! Newton-polygon duality, with multiplicities and the balancing check.

mod plane;
mod subdivision;
mod weierstrass;

pub use plane::{
    check_balancing, dual_curve, is_connected, is_tree, tropicalize_curve, BalanceReport, BalanceViolation, CurveDoc,
    CurveEdge, CurveRay, TropPlaneCurve,
};
pub use subdivision::{convex_hull, lattice_length, lifted_support, NewtonSubdivision, Pt};
pub use weierstrass::{weierstrass_case, weierstrass_curve, WeierstrassCase};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("expected a polynomial in 2 variables, got {0}")]
    NotBivariate(usize),
    #[error("the zero polynomial has no tropical curve")]
    ZeroPolynomial,
    #[error("a monomial has an empty tropical curve")]
    Monomial,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("malformed curve: {0}")]
    Malformed(String),
}
