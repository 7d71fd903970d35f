//! Exact computations in tropical and non-archimedean geometry.
//!
//! The crate covers the tropical Grassmannian of planes together with the
//! section of its tropicalization map, phylogenetic tree metrics, tropical plane
//! curves, integral affine unimodularity, and skeleta of standard semistable
//! blocks. All arithmetic is exact over the rationals.

pub mod affine;
pub mod arith;
pub mod curve;
pub mod grassmannian;
pub mod phylo;
pub mod sampling;
pub mod skeleton;

pub use arith::{LaurentPoly, LogNum, PuiseuxCoeff, Rational, TropNum};
