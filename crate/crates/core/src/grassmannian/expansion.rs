use std::collections::{BTreeMap, HashMap};

use crate::arith::LaurentPoly;
use crate::phylo::{pairs, PhyloTree};

use super::cherry::{coordinate_set_i, CherryOrder, IndexSetI};
use super::GrassError;

/// Every affine Plücker coordinate `u_kl = p_kl / p_ij`, `k < l`, written as
/// an integer Laurent polynomial in the variables of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerExpansion {
    pub base: (usize, usize),
    pub index: IndexSetI,
    map: BTreeMap<(usize, usize), LaurentPoly>,
}

impl PlueckerExpansion {
    /// `u_ab` for either orientation; `u_ba = −u_ab`, `u_ij = 1`.
    pub fn get(&self, a: usize, b: usize) -> Option<LaurentPoly> {
        if a == b {
            return None;
        }
        let (i, j) = self.base;
        let nv = self.index.len();
        if (a, b) == (i, j) {
            return Some(LaurentPoly::one(nv));
        }
        if (a, b) == (j, i) {
            return Some(-&LaurentPoly::one(nv));
        }
        let p = self.map.get(&(a.min(b), a.max(b)))?;
        Some(if a < b { p.clone() } else { -p })
    }

    /// The stored `(k, l) ↦ u_kl` with `k < l`, base pair excluded.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.map.iter()
    }
}

struct Expander<'a> {
    base: (usize, usize),
    index: &'a IndexSetI,
    order: &'a CherryOrder,
    // all signs positive: the same recursion with subtraction turned into addition
    shadow: bool,
    memo: HashMap<(usize, usize), LaurentPoly>,
}

impl Expander<'_> {
    fn nv(&self) -> usize {
        self.index.len()
    }

    fn sign(&self, p: LaurentPoly) -> LaurentPoly {
        if self.shadow {
            p
        } else {
            -&p
        }
    }

    fn var(&self, a: usize, b: usize) -> LaurentPoly {
        let (k, s) = self.index.lookup(a, b).expect("pair in I");
        let v = LaurentPoly::var(self.nv(), k);
        if s > 0 {
            v
        } else {
            self.sign(v)
        }
    }

    fn inv_var(&self, a: usize, b: usize) -> LaurentPoly {
        self.var(a, b).inverse().expect("monomial")
    }

    fn pred(&self, s: usize) -> Option<usize> {
        let (blk, p) = self.order.position(s)?;
        (p > 0).then(|| self.order.blocks[blk][p - 1])
    }

    fn u(&mut self, a: usize, b: usize) -> LaurentPoly {
        if let Some(p) = self.memo.get(&(a, b)) {
            return p.clone();
        }
        let (i, j) = self.base;
        let r = if (a, b) == (i, j) {
            LaurentPoly::one(self.nv())
        } else if (a, b) == (j, i) {
            self.sign(LaurentPoly::one(self.nv()))
        } else if self.index.lookup(a, b).is_some() {
            self.var(a, b)
        } else if b == i || b == j {
            let p = self.u(b, a);
            self.sign(p)
        } else if a == j {
            // u_{j s_{t+1}} = u_{i s_t}⁻¹ (u_{s_t s_{t+1}} + u_{i s_{t+1}} u_{j s_t})
            let m = self.pred(b).expect("first block element lies in I");
            let inner = &self.u(m, b) + &(&self.u(i, b) * &self.u(j, m));
            &self.inv_var(i, m) * &inner
        } else {
            let (pa, pb) = (self.order.position(a).expect("leaf"), self.order.position(b).expect("leaf"));
            if pa.0 != pb.0 {
                // u_ab = u_ia u_jb − u_ib u_ja
                let left = &self.u(i, a) * &self.u(j, b);
                let right = &self.u(i, b) * &self.u(j, a);
                &left + &self.sign(right)
            } else if pa.1 > pb.1 {
                let p = self.u(b, a);
                self.sign(p)
            } else {
                // u_kl = u_im⁻¹ (u_ik u_ml + u_il u_km), m the predecessor of l
                let m = self.pred(b).expect("non-adjacent");
                let inner = &(&self.u(i, a) * &self.u(m, b)) + &(&self.u(i, b) * &self.u(a, m));
                &self.inv_var(i, m) * &inner
            }
        };
        self.memo.insert((a, b), r.clone());
        r
    }
}

fn expand_with(
    t: &PhyloTree,
    o: &CherryOrder,
    index: &IndexSetI,
    shadow: bool,
) -> BTreeMap<(usize, usize), LaurentPoly> {
    let mut ex = Expander { base: o.base, index, order: o, shadow, memo: HashMap::new() };
    let (i, j) = o.base;
    pairs(t.n()).filter(|&(a, b)| (a, b) != (i.min(j), i.max(j))).map(|(a, b)| ((a, b), ex.u(a, b))).collect()
}

/// Expresses every `u_kl` through the coordinate set `I` of the given chart.
pub fn expand_pluecker(
    t: &PhyloTree,
    o: &CherryOrder,
    i: usize,
    j: usize,
    index: &IndexSetI,
) -> Result<PlueckerExpansion, GrassError> {
    let expected = coordinate_set_i(t, o, i, j)?;
    if &expected != index {
        return Err(GrassError::Internal("index set does not belong to this order".into()));
    }
    Ok(PlueckerExpansion { base: (i, j), index: expected, map: expand_with(t, o, index, false) })
}

/// True iff no monomials cancel anywhere in the expansion: running the same
/// recursion with every sign made positive yields the same supports.
pub fn cancellation_free(t: &PhyloTree, o: &CherryOrder, e: &PlueckerExpansion) -> bool {
    let shadow = expand_with(t, o, &e.index, true);
    e.map.iter().all(|(k, p)| {
        let s = &shadow[k];
        s.num_terms() == p.num_terms() && s.terms().all(|(a, _)| p.coeff(a).is_some())
    })
}
