//! The tropical Grassmannian of lines on the dense torus orbit: membership,
//! cherry orders, the coordinate set `I`, symbolic Plücker expansions and the
//! section of the tropicalization map.
//!
//! Points are in the log convention (`x_kl = log|p_kl|`, max-plus). Tree
//! distance vectors are already such points; [`convert_convention`] is the
//! only bridge to the valuation convention used elsewhere.

mod cherry;
mod expansion;
mod point;
mod section;

pub use cherry::{arrangement, build_cherry_order, coordinate_set_i, verify_cherry_property, CherryOrder, IndexSetI};
pub use expansion::{cancellation_free, expand_pluecker, PlueckerExpansion};
pub use point::{
    combinatorial_type, cone_violation, convert_convention, convert_to_log, membership, pair_key, parse_pair_key,
    PlueckerPoint, PointDoc,
};
pub use section::{
    form_log_value, pluecker_relation, pluecker_var, section_eval, section_well_defined, standard_choices,
    verify_section_identity, verify_section_identity_all, verify_section_identity_at, Chart, Disagreement,
    SectionReport, SectionViolation, WellDefinedReport,
};

use thiserror::Error;

use crate::arith::ArithError;
use crate::phylo::PhyloError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassError {
    #[error("not in the tropical Grassmannian: quartet {quartet:?} has a unique maximal pairing")]
    NotMember { quartet: [usize; 4] },
    #[error("point lies outside the cone of the given tree: quartet {quartet:?}")]
    NotInCone { quartet: [usize; 4] },
    #[error("point has {point} leaves but tree has {tree}")]
    SizeMismatch { point: usize, tree: usize },
    #[error("invalid base pair ({i}, {j})")]
    BadBasePair { i: usize, j: usize },
    #[error("order does not have the cherry property")]
    NoCherryProperty,
    #[error("coordinate {pair:?} is -inf: boundary strata are not supported")]
    BoundaryStratum { pair: (usize, usize) },
    #[error("missing coordinate {pair:?}")]
    MissingPair { pair: (usize, usize) },
    #[error("bad pair key {0:?}")]
    BadPairKey(String),
    #[error("bad coordinate value {0}")]
    BadValue(String),
    #[error("Plücker form is not homogeneous")]
    NotHomogeneous,
    #[error("form has {got} variables, expected {expected}")]
    FormArity { expected: usize, got: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Phylo(#[from] PhyloError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
