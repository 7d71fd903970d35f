use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, LogNum, Rational, TropNum};
use crate::phylo::{
    first_four_point_violation, pairs, quartet_split, quartets, reconstruct_tree, tree_distance, DistVector, PhyloTree,
    QuartetSplit, TreeEdge,
};

use super::GrassError;

/// A point of `R^{C(n,2)} / R(1,…,1)` in the log convention, stored with the
/// representative `x_12 = 0`.
///
/// Membership in the tropical Grassmannian is not enforced; see [`membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerPoint {
    x: DistVector,
}

impl PlueckerPoint {
    /// Entries in lexicographic pair order; normalized so that `x_12 = 0`.
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self, GrassError> {
        Ok(Self::from_dist(&DistVector::new(n, entries)?))
    }

    pub fn from_dist(x: &DistVector) -> Self {
        let c = -x.get(1, 2);
        PlueckerPoint { x: x.shifted(&c) }
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.x.get(i, j)
    }

    pub fn as_dist(&self) -> &DistVector {
        &self.x
    }
}

/// Tree distances are already log-convention Plücker vectors: both satisfy the
/// four-point condition with the maximum attained twice.
impl From<&PhyloTree> for PlueckerPoint {
    fn from(t: &PhyloTree) -> Self {
        PlueckerPoint::from_dist(&tree_distance(t))
    }
}

/// Converts a log-convention value to the library-wide valuation convention.
pub fn convert_convention(v: &LogNum) -> TropNum {
    v.to_valuation()
}

/// Inverse of [`convert_convention`].
pub fn convert_to_log(v: &TropNum) -> LogNum {
    LogNum::from_valuation(v)
}

/// True iff `x` lies in the tropical Grassmannian of planes (torus part).
pub fn membership(x: &PlueckerPoint) -> bool {
    first_four_point_violation(x.as_dist()).is_none()
}

/// The phylogenetic tree `T` with `x ∈ C_T`, zero internal edges contracted.
/// Its weights realise the normalized representative stored in `x`.
pub fn combinatorial_type(x: &PlueckerPoint) -> Result<PhyloTree, GrassError> {
    if let Some(quartet) = first_four_point_violation(x.as_dist()) {
        return Err(GrassError::NotMember { quartet });
    }
    Ok(reconstruct_tree(x.as_dist())?.contracted())
}

/// The quartet topology of `t` read from its shape alone (all weights 1).
pub(crate) fn topology_distances(t: &PhyloTree) -> DistVector {
    let unit = PhyloTree::new(
        t.num_nodes(),
        t.edges().iter().map(|e| TreeEdge { a: e.a, b: e.b, w: Rational::from_integer(1.into()) }).collect(),
        (1..=t.n()).map(|l| t.leaf_node(l)).collect(),
    )
    .expect("same shape");
    tree_distance(&unit)
}

/// First quartet where `x` is resolved differently from the shape of `t`;
/// `None` means `x` lies in the closed cone `C_T`.
pub fn cone_violation(x: &PlueckerPoint, t: &PhyloTree) -> Result<Option<[usize; 4]>, GrassError> {
    if x.n() != t.n() {
        return Err(GrassError::SizeMismatch { point: x.n(), tree: t.n() });
    }
    let topo = topology_distances(t);
    for q in quartets(x.n()) {
        let sx = quartet_split(x.as_dist(), q).map_err(|_| GrassError::NotMember { quartet: q })?;
        if sx == QuartetSplit::Degenerate {
            continue;
        }
        if quartet_split(&topo, q)? != sx {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// JSON layout `{n, x: {"ij": "p/q"}}`; for `n ≥ 10` keys are written `"i,j"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointDoc {
    pub n: usize,
    pub x: BTreeMap<String, serde_json::Value>,
}

pub fn pair_key(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("{i}{j}")
    } else {
        format!("{i},{j}")
    }
}

pub fn parse_pair_key(n: usize, key: &str) -> Option<(usize, usize)> {
    let key = key.trim();
    let (a, b) = if let Some((a, b)) = key.split_once(',') {
        (a.trim().parse().ok()?, b.trim().parse().ok()?)
    } else if key.len() == 2 && n < 10 {
        let bytes = key.as_bytes();
        ((bytes[0] as char).to_digit(10)? as usize, (bytes[1] as char).to_digit(10)? as usize)
    } else {
        return None;
    };
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a >= 1 && a < b && b <= n).then_some((a, b))
}

impl From<&PlueckerPoint> for PointDoc {
    fn from(p: &PlueckerPoint) -> Self {
        let n = p.n();
        PointDoc {
            n,
            x: pairs(n)
                .map(|(i, j)| (pair_key(n, i, j), serde_json::Value::String(format_rational(&p.get(i, j)))))
                .collect(),
        }
    }
}

impl TryFrom<PointDoc> for PlueckerPoint {
    type Error = GrassError;
    fn try_from(doc: PointDoc) -> Result<Self, GrassError> {
        let n = doc.n;
        if n < 2 {
            return Err(GrassError::Phylo(crate::phylo::PhyloError::TooFewLeaves(n)));
        }
        let mut entries: Vec<Option<Rational>> = vec![None; n * (n - 1) / 2];
        for (key, value) in &doc.x {
            let (i, j) = parse_pair_key(n, key).ok_or_else(|| GrassError::BadPairKey(key.clone()))?;
            let text = match value {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(num) => num.to_string(),
                other => return Err(GrassError::BadValue(other.to_string())),
            };
            if matches!(text.trim(), "inf" | "-inf" | "+inf") {
                return Err(GrassError::BoundaryStratum { pair: (i, j) });
            }
            let q = parse_rational(&text).map_err(|_| GrassError::BadValue(text.clone()))?;
            let slot = &mut entries[crate::phylo::pair_index(n, i, j)];
            if slot.is_some() {
                return Err(GrassError::BadPairKey(key.clone()));
            }
            *slot = Some(q);
        }
        let mut full = Vec::with_capacity(entries.len());
        for ((i, j), e) in pairs(n).zip(entries) {
            full.push(e.ok_or(GrassError::MissingPair { pair: (i, j) })?);
        }
        PlueckerPoint::new(n, full)
    }
}

impl Serialize for PlueckerPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PointDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlueckerPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PlueckerPoint::try_from(PointDoc::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn normalizes_representative() {
        let p = PlueckerPoint::new(4, vec![int(3), int(4), int(4), int(4), int(4), int(3)]).unwrap();
        assert_eq!(p.get(1, 2), int(0));
        assert_eq!(p.get(3, 4), int(0));
        assert_eq!(p.get(1, 3), int(1));
    }

    #[test]
    fn membership_examples() {
        let ok = PlueckerPoint::new(4, vec![int(5), int(7), int(7), int(0), int(0), int(0)]).unwrap();
        assert!(membership(&ok));
        let bad = PlueckerPoint::new(4, vec![int(5), int(6), int(7), int(0), int(0), int(0)]).unwrap();
        assert!(!membership(&bad));
        assert!(matches!(combinatorial_type(&bad), Err(GrassError::NotMember { .. })));
    }

    #[test]
    fn conversion() {
        assert_eq!(convert_convention(&LogNum::Finite(int(3))), TropNum::Finite(int(-3)));
        assert_eq!(convert_convention(&LogNum::Finite(int(0))), TropNum::Finite(int(0)));
        assert_eq!(convert_convention(&LogNum::NegInf), TropNum::Inf);
        let v = LogNum::Finite(int(-7));
        assert_eq!(convert_to_log(&convert_convention(&v)), v);
    }

    #[test]
    fn json_keys_and_boundary() {
        let p = PlueckerPoint::new(4, vec![int(0), int(1), int(1), int(1), int(1), int(0)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"13\":\"1\""));
        let back: PlueckerPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let comma: PlueckerPoint = serde_json::from_str(r#"{"n":3,"x":{"1,2":"1","1,3":"2","2,3":3}}"#).unwrap();
        assert_eq!(comma.get(2, 3), int(2));
        let err = PlueckerPoint::try_from(PointDoc {
            n: 3,
            x: [("12", "0"), ("13", "-inf"), ("23", "1")]
                .iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
                .collect(),
        });
        assert!(matches!(err, Err(GrassError::BoundaryStratum { pair: (1, 3) })));
    }
}
