//! Phylogenetic trees, their leaf-distance vectors, the four-point condition,
//! and exact reconstruction of a tree from its distances.

mod distance;
mod reconstruct;
mod tree;

pub(crate) use distance::pair_index;
pub use distance::{
    first_four_point_violation, four_point_check, pairs, quartet_split, quartets, DistVector, QuartetSplit,
};
pub use reconstruct::reconstruct_tree;
pub use tree::{tree_distance, NodeId, PhyloTree, TreeDoc, TreeEdge, TreeEdgeDoc};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhyloError {
    #[error("need at least two leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("expected {expected} distance entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("not a valid phylogenetic tree: {0}")]
    NotATree(String),
    #[error("internal edge has negative weight {0}")]
    NegativeInternalWeight(String),
    #[error("unknown leaf label {0}")]
    UnknownLeaf(usize),
    #[error("unknown leaf label {0:?}")]
    UnknownLeafLabel(String),
    #[error("leaf {0} repeated in quartet")]
    RepeatedLeaf(usize),
    /// The maximum of the three pairing sums is attained only once.
    #[error("four-point condition fails on quartet {quartet:?}")]
    FourPointViolation { quartet: [usize; 4] },
    #[error("internal reconstruction error: {0}")]
    Inconsistent(String),
}
