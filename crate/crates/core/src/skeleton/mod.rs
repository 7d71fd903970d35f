//! Skeleta: the standard semistable blocks `Δ(r,π) × R^s` with their Gauss
//! point section, and metric graphs of curves with the slope formula.

mod block;
mod graph;

pub use block::{block_polytope, block_sigma_eval, BlockDoc, BlockPoint, StandardBlock};
pub use graph::{
    check_slope_formula, degrees, edge_slope, GraphDoc, GraphEdge, GraphEdgeDoc, GraphRay, MetricGraph, PLFunction,
    PLFunctionDoc, SlopeReport, SlopeViolation,
};

use thiserror::Error;

use crate::arith::{ArithError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeletonError {
    #[error("invalid block: {0}")]
    BadBlock(String),
    #[error("block with r = s = 0 has a one-point skeleton")]
    PointSkeleton,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("point lies outside the skeleton")]
    OutsideSkeleton,
    #[error("negative exponent: functions on the block are polynomials")]
    NegativeExponent,
    #[error("invalid graph: {0}")]
    BadGraph(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown ray {0:?}")]
    UnknownRay(String),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("edge {edge} is not incident to {vertex:?}")]
    NotIncident { vertex: String, edge: usize },
    #[error("no value or slope given for {0:?}")]
    MissingValue(String),
    #[error("slope {slope} on edge {a}–{b} is not an integer")]
    NonIntegralSlope { a: String, b: String, slope: Rational },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
