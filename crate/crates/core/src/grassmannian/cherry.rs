use std::collections::BTreeSet;

use crate::phylo::{quartet_split, PhyloTree, QuartetSplit};

use super::point::topology_distances;
use super::GrassError;

/// A partial order on the leaves other than the base pair `(i, j)`: leaves of
/// different subtrees hanging off the `i`–`j` path are incomparable, and each
/// subtree is totally ordered by its block, `s₁ ≺ s₂ ≺ … ≺ s_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CherryOrder {
    pub base: (usize, usize),
    /// One block per subtree, ordered by attachment position from `i` to `j`.
    pub blocks: Vec<Vec<usize>>,
}

impl CherryOrder {
    /// The same subtrees with every block order reversed; still has the cherry
    /// property whenever `self` does.
    pub fn reversed(&self) -> CherryOrder {
        CherryOrder { base: self.base, blocks: self.blocks.iter().map(|b| b.iter().rev().copied().collect()).collect() }
    }

    /// Block index and position of a leaf.
    pub fn position(&self, leaf: usize) -> Option<(usize, usize)> {
        self.blocks.iter().enumerate().find_map(|(a, b)| b.iter().position(|&s| s == leaf).map(|p| (a, p)))
    }
}

fn check_base(t: &PhyloTree, i: usize, j: usize) -> Result<(), GrassError> {
    let n = t.n();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(GrassError::BadBasePair { i, j });
    }
    Ok(())
}

/// Leaf sets of the subtrees hanging off the path from leaf `i` to leaf `j`,
/// each listed in depth-first order (children visited by smallest leaf label),
/// subtrees ordered by their attachment point along the path.
pub fn arrangement(t: &PhyloTree, i: usize, j: usize) -> Result<Vec<Vec<usize>>, GrassError> {
    check_base(t, i, j)?;
    let path = t.node_path(t.leaf_node(i), t.leaf_node(j));
    let on_path: BTreeSet<usize> = path.iter().copied().collect();
    let adj = t.adjacency();
    let mut blocks = Vec::new();
    for &v in &path[1..path.len() - 1] {
        let mut hanging: Vec<(usize, Vec<usize>)> = adj[v]
            .iter()
            .filter(|(w, _)| !on_path.contains(w))
            .map(|&(w, _)| {
                let mut order = Vec::new();
                dfs_leaves(t, &adj, w, v, &mut order);
                (order.iter().copied().min().unwrap_or(usize::MAX), order)
            })
            .collect();
        hanging.sort();
        blocks.extend(hanging.into_iter().map(|(_, o)| o));
    }
    Ok(blocks)
}

fn dfs_leaves(t: &PhyloTree, adj: &[Vec<(usize, usize)>], v: usize, parent: usize, out: &mut Vec<usize>) {
    if let Some(l) = t.leaf_label(v) {
        out.push(l);
        return;
    }
    let mut kids: Vec<(usize, usize)> = adj[v]
        .iter()
        .filter(|(w, _)| *w != parent)
        .map(|&(w, _)| {
            let min = t.leaves_beyond(w, v).into_iter().next().unwrap_or(usize::MAX);
            (min, w)
        })
        .collect();
    kids.sort();
    for (_, w) in kids {
        dfs_leaves(t, adj, w, v, out);
    }
}

/// A partial order with the cherry property for base pair `(i, j)`.
///
/// Each subtree is ordered depth-first. For `k ≺ l ≺ m` in one subtree the
/// clade of the lowest common ancestor of `k` and `m` (rooted towards `i`)
/// occupies a contiguous run of the depth-first order, so it contains `l`;
/// hence `{k, m}` is never the cherry of `{i, k, l, m}`.
pub fn build_cherry_order(t: &PhyloTree, i: usize, j: usize) -> Result<CherryOrder, GrassError> {
    let order = CherryOrder { base: (i, j), blocks: arrangement(t, i, j)? };
    if !verify_cherry_property(&order, t, i, j)? {
        return Err(GrassError::Internal("depth-first order lacks the cherry property".into()));
    }
    Ok(order)
}

/// Checks incomparability across subtrees, totality within them, and that for
/// every chain `k ≺ l ≺ m` the quartet `{i, k, l, m}` has `{k, l}` or `{l, m}`
/// as a cherry. Degenerate quartets are accepted.
pub fn verify_cherry_property(o: &CherryOrder, t: &PhyloTree, i: usize, j: usize) -> Result<bool, GrassError> {
    check_base(t, i, j)?;
    if o.base != (i, j) {
        return Ok(false);
    }
    let expected: BTreeSet<BTreeSet<usize>> =
        arrangement(t, i, j)?.into_iter().map(|b| b.into_iter().collect()).collect();
    let mut seen = BTreeSet::new();
    let mut got = BTreeSet::new();
    for block in &o.blocks {
        let set: BTreeSet<usize> = block.iter().copied().collect();
        // a repeated leaf means the block is not a total order
        if set.len() != block.len() || block.iter().any(|l| !seen.insert(*l)) {
            return Ok(false);
        }
        got.insert(set);
    }
    if got != expected {
        return Ok(false);
    }
    let topo = topology_distances(t);
    for block in &o.blocks {
        for a in 0..block.len() {
            for b in a + 1..block.len() {
                for c in b + 1..block.len() {
                    let (k, l, m) = (block[a], block[b], block[c]);
                    let ok = match quartet_split(&topo, [i, k, l, m])? {
                        QuartetSplit::Degenerate => true,
                        s => s.pairs_together(k, l) || s.pairs_together(l, m),
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The `2(n−2)` affine Plücker coordinates generating the function field,
/// stored as oriented pairs: per block `(i, s_t)` for all `t`, `(j, s₁)` and
/// `(s_t, s_{t+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSetI {
    pub base: (usize, usize),
    pub vars: Vec<(usize, usize)>,
}

impl IndexSetI {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Variable index of the oriented pair and the sign relating them:
    /// `u_ab = sign · var`.
    pub fn lookup(&self, a: usize, b: usize) -> Option<(usize, i8)> {
        self.vars
            .iter()
            .position(|&p| p == (a, b))
            .map(|k| (k, 1))
            .or_else(|| self.vars.iter().position(|&p| p == (b, a)).map(|k| (k, -1)))
    }
}

pub fn coordinate_set_i(t: &PhyloTree, o: &CherryOrder, i: usize, j: usize) -> Result<IndexSetI, GrassError> {
    if !verify_cherry_property(o, t, i, j)? {
        return Err(GrassError::NoCherryProperty);
    }
    let mut vars = Vec::with_capacity(2 * (t.n() - 2));
    for block in &o.blocks {
        vars.extend(block.iter().map(|&s| (i, s)));
        vars.push((j, block[0]));
        vars.extend(block.windows(2).map(|w| (w[0], w[1])));
    }
    Ok(IndexSetI { base: (i, j), vars })
}
