use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, to_decimal, QStr, Rational};

use super::distance::DistVector;
use super::PhyloError;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    pub a: NodeId,
    pub b: NodeId,
    pub w: Rational,
}

/// A weighted tree whose leaves carry the labels `1..=n`.
///
/// Nodes are `0..num_nodes`. Leaves have degree one, every other node has
/// degree at least three, internal edge weights are nonnegative and leaf edge
/// weights are arbitrary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloTree {
    num_nodes: usize,
    edges: Vec<TreeEdge>,
    /// `leaves[k]` is the node carrying label `k + 1`.
    leaves: Vec<NodeId>,
}

impl PhyloTree {
    pub fn new(num_nodes: usize, edges: Vec<TreeEdge>, leaves: Vec<NodeId>) -> Result<Self, PhyloError> {
        let n = leaves.len();
        if n < 2 {
            return Err(PhyloError::TooFewLeaves(n));
        }
        if edges.len() + 1 != num_nodes {
            return Err(PhyloError::NotATree("edge count is not node count minus one".into()));
        }
        let mut degree = vec![0usize; num_nodes];
        for e in &edges {
            if e.a >= num_nodes || e.b >= num_nodes {
                return Err(PhyloError::NotATree(format!("edge {}-{} references a missing node", e.a, e.b)));
            }
            if e.a == e.b {
                return Err(PhyloError::NotATree(format!("self loop at node {}", e.a)));
            }
            degree[e.a] += 1;
            degree[e.b] += 1;
        }
        let mut is_leaf = vec![false; num_nodes];
        for &v in &leaves {
            if v >= num_nodes {
                return Err(PhyloError::NotATree(format!("leaf node {v} does not exist")));
            }
            if is_leaf[v] {
                return Err(PhyloError::NotATree(format!("node {v} carries two labels")));
            }
            is_leaf[v] = true;
        }
        for v in 0..num_nodes {
            match (is_leaf[v], degree[v]) {
                (true, 1) => {}
                (true, d) => return Err(PhyloError::NotATree(format!("labelled node {v} has degree {d}"))),
                (false, d) if d < 3 => {
                    return Err(PhyloError::NotATree(format!("unlabelled node {v} has degree {d}")));
                }
                _ => {}
            }
        }
        let tree = PhyloTree { num_nodes, edges, leaves };
        // connected + |E| = |V| - 1 makes it a tree
        let mut seen = vec![false; num_nodes];
        let adj = tree.adjacency();
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(PhyloError::NotATree("graph is disconnected".into()));
        }
        for (k, e) in tree.edges.iter().enumerate() {
            if !tree.is_leaf_edge(k) && e.w.is_negative() {
                return Err(PhyloError::NegativeInternalWeight(format_rational(&e.w)));
            }
        }
        Ok(tree)
    }

    /// Star tree: one centre joined to each leaf, leaf `k` with weight `weights[k-1]`.
    pub fn star(weights: &[Rational]) -> Result<Self, PhyloError> {
        let n = weights.len();
        if n == 2 {
            return PhyloTree::new(2, vec![TreeEdge { a: 0, b: 1, w: &weights[0] + &weights[1] }], vec![0, 1]);
        }
        let edges = weights.iter().enumerate().map(|(k, w)| TreeEdge { a: 0, b: k + 1, w: w.clone() }).collect();
        PhyloTree::new(n + 1, edges, (1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.leaves.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// Node carrying leaf label `label` (1-based).
    pub fn leaf_node(&self, label: usize) -> NodeId {
        self.leaves[label - 1]
    }

    pub fn leaf_label(&self, v: NodeId) -> Option<usize> {
        self.leaves.iter().position(|&u| u == v).map(|k| k + 1)
    }

    pub fn is_leaf_edge(&self, k: usize) -> bool {
        let e = &self.edges[k];
        self.leaves.contains(&e.a) || self.leaves.contains(&e.b)
    }

    /// Neighbour lists `(node, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(NodeId, usize)>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, k));
            adj[e.b].push((e.a, k));
        }
        adj
    }

    /// Nodes on the unique path from `from` to `to`, both included.
    pub fn node_path(&self, from: NodeId, to: NodeId) -> Vec<NodeId> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.num_nodes];
        parent[from] = from;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                break;
            }
            for &(w, _) in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// Labels of the leaves reachable from `start` without passing through `blocked`.
    pub fn leaves_beyond(&self, start: NodeId, blocked: NodeId) -> BTreeSet<usize> {
        let adj = self.adjacency();
        let mut out = BTreeSet::new();
        let mut stack = vec![(start, blocked)];
        while let Some((v, from)) = stack.pop() {
            if let Some(l) = self.leaf_label(v) {
                out.insert(l);
            }
            for &(w, _) in &adj[v] {
                if w != from {
                    stack.push((w, v));
                }
            }
        }
        out
    }

    /// Nontrivial splits carried by internal edges, keyed by the side that does
    /// not contain leaf 1.
    pub fn splits(&self) -> BTreeMap<Vec<usize>, Rational> {
        let mut out = BTreeMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            if self.is_leaf_edge(k) {
                continue;
            }
            let side_b = self.leaves_beyond(e.b, e.a);
            let side = if side_b.contains(&1) { self.leaves_beyond(e.a, e.b) } else { side_b };
            let entry = out.entry(side.into_iter().collect()).or_insert_with(Rational::zero);
            *entry += &e.w;
        }
        out
    }

    /// Weight of the edge at leaf `label`. For `n = 2` the single edge is shared.
    pub fn leaf_edge_weight(&self, label: usize) -> Rational {
        let v = self.leaf_node(label);
        self.edges.iter().find(|e| e.a == v || e.b == v).map(|e| e.w.clone()).expect("leaf has an edge")
    }

    /// Contracts every internal edge of weight zero.
    pub fn contracted(&self) -> PhyloTree {
        let mut rep: Vec<NodeId> = (0..self.num_nodes).collect();
        fn find(rep: &mut [NodeId], v: NodeId) -> NodeId {
            let mut r = v;
            while rep[r] != r {
                r = rep[r];
            }
            rep[v] = r;
            r
        }
        for (k, e) in self.edges.iter().enumerate() {
            if !self.is_leaf_edge(k) && e.w.is_zero() {
                let (ra, rb) = (find(&mut rep, e.a), find(&mut rep, e.b));
                rep[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut new_id = vec![usize::MAX; self.num_nodes];
        let mut next = 0;
        for v in 0..self.num_nodes {
            let r = find(&mut rep, v);
            if new_id[r] == usize::MAX {
                new_id[r] = next;
                next += 1;
            }
            new_id[v] = new_id[r];
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, e)| self.is_leaf_edge(*k) || !e.w.is_zero())
            .map(|(_, e)| TreeEdge { a: new_id[e.a], b: new_id[e.b], w: e.w.clone() })
            .collect();
        let leaves = self.leaves.iter().map(|&v| new_id[v]).collect();
        PhyloTree::new(next, edges, leaves).expect("contraction preserves validity")
    }

    /// True if both trees have the same splits with the same weights and the
    /// same leaf edge weights once zero internal edges are contracted.
    pub fn same_weighted_tree(&self, other: &PhyloTree) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let (a, b) = (self.contracted(), other.contracted());
        a.splits() == b.splits() && (1..=a.n()).all(|l| a.leaf_edge_weight(l) == b.leaf_edge_weight(l))
    }

    /// Newick text rooted at the neighbour of leaf 1. Branch lengths are
    /// decimals (rounded to 9 places when not terminating) followed by the
    /// exact value as a comment, e.g. `3:0.333333333[&w=1/3]`.
    pub fn to_newick(&self) -> String {
        let adj = self.adjacency();
        let leaf1 = self.leaf_node(1);
        let root = adj[leaf1][0].0;
        let mut out = String::new();
        self.newick_node(&adj, root, usize::MAX, &mut out);
        out.push(';');
        out
    }

    fn newick_node(&self, adj: &[Vec<(NodeId, usize)>], v: NodeId, parent: NodeId, out: &mut String) {
        let children: Vec<(NodeId, usize)> = adj[v].iter().copied().filter(|(w, _)| *w != parent).collect();
        if !children.is_empty() {
            out.push('(');
            for (k, (w, e)) in children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                self.newick_node(adj, *w, v, out);
                let wt = &self.edges[*e].w;
                out.push_str(&format!(":{}[&w={}]", to_decimal(wt, 9), format_rational(wt)));
            }
            out.push(')');
        }
        if let Some(l) = self.leaf_label(v) {
            out.push_str(&l.to_string());
        }
    }
}

/// Sum of edge weights along each leaf-to-leaf path.
pub fn tree_distance(t: &PhyloTree) -> DistVector {
    let n = t.n();
    let adj = t.adjacency();
    let mut entries = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        let mut dist: Vec<Option<Rational>> = vec![None; t.num_nodes()];
        let s = t.leaf_node(i);
        dist[s] = Some(Rational::zero());
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let dv = dist[v].clone().expect("visited");
            for &(w, k) in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(&dv + &t.edges()[k].w);
                    stack.push(w);
                }
            }
        }
        for j in i + 1..=n {
            entries.push(dist[t.leaf_node(j)].clone().expect("connected"));
        }
    }
    DistVector::new(n, entries).expect("n >= 2")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeEdgeDoc {
    pub a: NodeId,
    pub b: NodeId,
    pub w: QStr,
}

/// JSON layout `{n, edges: [{a, b, w}], leaves: {label: nodeId}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeDoc {
    pub n: usize,
    pub edges: Vec<TreeEdgeDoc>,
    pub leaves: BTreeMap<String, NodeId>,
}

impl From<&PhyloTree> for TreeDoc {
    fn from(t: &PhyloTree) -> Self {
        TreeDoc {
            n: t.n(),
            edges: t.edges.iter().map(|e| TreeEdgeDoc { a: e.a, b: e.b, w: QStr(e.w.clone()) }).collect(),
            leaves: t.leaves.iter().enumerate().map(|(k, &v)| ((k + 1).to_string(), v)).collect(),
        }
    }
}

impl TryFrom<TreeDoc> for PhyloTree {
    type Error = PhyloError;
    fn try_from(doc: TreeDoc) -> Result<Self, PhyloError> {
        let mut leaves = vec![usize::MAX; doc.n];
        for (label, v) in &doc.leaves {
            let l: usize = label.trim().parse().map_err(|_| PhyloError::UnknownLeafLabel(label.clone()))?;
            if l == 0 || l > doc.n || leaves[l - 1] != usize::MAX {
                return Err(PhyloError::UnknownLeafLabel(label.clone()));
            }
            leaves[l - 1] = *v;
        }
        if leaves.contains(&usize::MAX) {
            return Err(PhyloError::NotATree("not every label 1..n is assigned".into()));
        }
        let num_nodes =
            doc.edges.iter().flat_map(|e| [e.a, e.b]).chain(leaves.iter().copied()).max().map_or(0, |m| m + 1);
        let edges = doc.edges.into_iter().map(|e| TreeEdge { a: e.a, b: e.b, w: e.w.0 }).collect();
        PhyloTree::new(num_nodes, edges, leaves)
    }
}

impl Serialize for PhyloTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TreeDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhyloTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = TreeDoc::deserialize(d)?;
        PhyloTree::try_from(doc).map_err(serde::de::Error::custom)
    }
}
