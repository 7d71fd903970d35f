use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

use super::distance::{first_four_point_violation, DistVector};
use super::tree::{tree_distance, PhyloTree, TreeEdge};
use super::PhyloError;

/// Growing tree used during leaf insertion: adjacency with edge lengths.
struct Scaffold {
    adj: Vec<Vec<(usize, Rational)>>,
}

impl Scaffold {
    fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    fn connect(&mut self, a: usize, b: usize, w: Rational) {
        self.adj[a].push((b, w.clone()));
        self.adj[b].push((a, w));
    }

    fn disconnect(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|(v, _)| *v != b);
        self.adj[b].retain(|(v, _)| *v != a);
    }

    fn path(&self, from: usize, to: usize) -> Vec<(usize, Rational)> {
        let mut parent: Vec<Option<(usize, Rational)>> = vec![None; self.adj.len()];
        let mut stack = vec![from];
        let mut seen = vec![false; self.adj.len()];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for (w, len) in &self.adj[v] {
                if !seen[*w] {
                    seen[*w] = true;
                    parent[*w] = Some((v, len.clone()));
                    stack.push(*w);
                }
            }
        }
        // (node, length of the edge leading to it from the previous node)
        let mut out = vec![];
        let mut v = to;
        while v != from {
            let (p, len) = parent[v].clone().expect("connected scaffold");
            out.push((v, len));
            v = p;
        }
        out.reverse();
        out
    }
}

/// Rebuilds a tree realising `x` exactly.
///
/// Leaves are inserted one at a time. To keep every pendant length positive
/// during insertion all distances are first shifted by `2K`; the shift is
/// removed from the leaf edges at the end. Internal vertices of degree above
/// three arise where quartets are degenerate, so no zero-weight internal edge
/// is ever created.
pub fn reconstruct_tree(x: &DistVector) -> Result<PhyloTree, PhyloError> {
    if let Some(quartet) = first_four_point_violation(x) {
        return Err(PhyloError::FourPointViolation { quartet });
    }
    let n = x.n();
    let max_abs = x.entries().iter().map(|e| e.abs()).max().unwrap_or_else(Rational::zero);
    let k = Rational::from_integer(2.into()) * max_abs + Rational::one();
    let two_k = &k + &k;
    let d = |i: usize, j: usize| -> Rational {
        if i == j {
            Rational::zero()
        } else {
            x.get(i, j) + &two_k
        }
    };
    let half = Rational::new(1.into(), 2.into());

    // leaf label l lives at scaffold node l - 1
    let mut sc = Scaffold { adj: vec![Vec::new(); n] };
    sc.connect(0, 1, d(1, 2));
    for leaf in 3..=n {
        // attachment point: distance g from leaf 1 along the path to leaf b
        let (b, g) = (2..leaf)
            .map(|b| (b, (d(1, leaf) + d(1, b) - d(leaf, b)) * &half))
            .max_by(|p, q| p.1.cmp(&q.1).then(q.0.cmp(&p.0)))
            .expect("at least one earlier leaf");
        let pendant = d(1, leaf) - &g;
        if !g.is_positive() || !pendant.is_positive() {
            return Err(PhyloError::Inconsistent(format!("leaf {leaf} cannot be attached")));
        }
        let mut remaining = g;
        let mut prev = 0usize;
        let mut attach = None;
        for (v, len) in sc.path(0, b - 1) {
            if remaining < len {
                let mid = sc.add_node();
                sc.disconnect(prev, v);
                sc.connect(prev, mid, remaining.clone());
                sc.connect(mid, v, len - &remaining);
                attach = Some(mid);
                break;
            }
            remaining -= len;
            if remaining.is_zero() {
                attach = Some(v);
                break;
            }
            prev = v;
        }
        let at = attach.ok_or_else(|| PhyloError::Inconsistent(format!("leaf {leaf} falls off the tree")))?;
        if at < n {
            return Err(PhyloError::Inconsistent(format!("leaf {leaf} would attach to a leaf")));
        }
        sc.connect(at, leaf - 1, pendant);
    }

    let mut edges = Vec::new();
    for (a, nbrs) in sc.adj.iter().enumerate() {
        for (b, len) in nbrs {
            if a < *b {
                let mut w = len.clone();
                if a < n {
                    w -= &k;
                }
                if *b < n {
                    w -= &k;
                }
                edges.push(TreeEdge { a, b: *b, w });
            }
        }
    }
    let tree = PhyloTree::new(sc.adj.len(), edges, (0..n).collect())?;
    if tree_distance(&tree) != *x {
        return Err(PhyloError::Inconsistent("rebuilt tree does not reproduce the distances".into()));
    }
    Ok(tree)
}
