//! Integral Γ-affine polyhedra and maps (`Γ = Q`) and the unimodularity test.

mod fm;
pub mod lattice;
mod map;
mod polyhedron;

pub use map::{unimodular_on, GammaAffineMap, MapDoc};
pub use polyhedron::{Constraint, ConstraintDoc, GammaPolyhedron, PolyhedronDoc};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("polyhedron is empty")]
    Empty,
    #[error("matrix must be a nonempty rectangle")]
    BadMatrix,
}
