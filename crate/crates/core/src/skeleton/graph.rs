use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{QStr, Rational, ZInt};

use super::SkeletonError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub a: String,
    pub b: String,
    pub len: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRay {
    pub base: String,
    pub id: String,
}

/// A finite metric graph with unbounded rays, the skeleton of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct MetricGraph {
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
    rays: Vec<GraphRay>,
}

impl MetricGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<GraphEdge>, rays: Vec<GraphRay>) -> Result<Self, SkeletonError> {
        let ids: BTreeSet<&String> = vertices.iter().collect();
        if ids.len() != vertices.len() {
            return Err(SkeletonError::BadGraph("repeated vertex id".into()));
        }
        for e in &edges {
            for end in [&e.a, &e.b] {
                if !ids.contains(end) {
                    return Err(SkeletonError::UnknownVertex(end.clone()));
                }
            }
            if !e.len.is_positive() {
                return Err(SkeletonError::BadGraph(format!("edge {}–{} has non-positive length", e.a, e.b)));
            }
        }
        let mut ray_ids = BTreeSet::new();
        for r in &rays {
            if !ids.contains(&r.base) {
                return Err(SkeletonError::UnknownVertex(r.base.clone()));
            }
            if !ray_ids.insert(&r.id) {
                return Err(SkeletonError::BadGraph(format!("repeated ray id {}", r.id)));
            }
        }
        Ok(MetricGraph { vertices, edges, rays })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn rays(&self) -> &[GraphRay] {
        &self.rays
    }

    fn has_vertex(&self, u: &str) -> bool {
        self.vertices.iter().any(|v| v == u)
    }
}

/// `(deg_b, deg_u)`: bounded edges (loops counted twice) and rays at `u`.
pub fn degrees(g: &MetricGraph, u: &str) -> Result<(usize, usize), SkeletonError> {
    if !g.has_vertex(u) {
        return Err(SkeletonError::UnknownVertex(u.into()));
    }
    let b = g.edges.iter().map(|e| (e.a == u) as usize + (e.b == u) as usize).sum();
    let r = g.rays.iter().filter(|r| r.base == u).count();
    Ok((b, r))
}

/// A function on the graph, affine with integer slope on every edge and ray,
/// given by its vertex values and outgoing ray slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    values: BTreeMap<String, Rational>,
    ray_slopes: BTreeMap<String, BigInt>,
}

impl PLFunction {
    pub fn new(
        g: &MetricGraph,
        values: BTreeMap<String, Rational>,
        ray_slopes: BTreeMap<String, BigInt>,
    ) -> Result<Self, SkeletonError> {
        for v in &g.vertices {
            if !values.contains_key(v) {
                return Err(SkeletonError::MissingValue(v.clone()));
            }
        }
        if let Some(k) = values.keys().find(|k| !g.has_vertex(k)) {
            return Err(SkeletonError::UnknownVertex(k.clone()));
        }
        for r in &g.rays {
            if !ray_slopes.contains_key(&r.id) {
                return Err(SkeletonError::MissingValue(r.id.clone()));
            }
        }
        if let Some(k) = ray_slopes.keys().find(|k| !g.rays.iter().any(|r| &r.id == *k)) {
            return Err(SkeletonError::UnknownRay(k.clone()));
        }
        for e in &g.edges {
            let s = (&values[&e.b] - &values[&e.a]) / &e.len;
            if !s.is_integer() {
                return Err(SkeletonError::NonIntegralSlope { a: e.a.clone(), b: e.b.clone(), slope: s });
            }
        }
        Ok(PLFunction { values, ray_slopes })
    }

    pub fn value(&self, v: &str) -> Option<&Rational> {
        self.values.get(v)
    }

    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.values
    }

    pub fn ray_slopes(&self) -> &BTreeMap<String, BigInt> {
        &self.ray_slopes
    }
}

/// Outgoing slope `(F(w) − F(u)) / len(e)` of `F` at `u` along edge `e`.
pub fn edge_slope(g: &MetricGraph, f: &PLFunction, u: &str, e: usize) -> Result<Rational, SkeletonError> {
    let edge = g.edges.get(e).ok_or(SkeletonError::UnknownEdge(e))?;
    let w = if edge.a == u {
        &edge.b
    } else if edge.b == u {
        &edge.a
    } else {
        return Err(SkeletonError::NotIncident { vertex: u.into(), edge: e });
    };
    Ok((&f.values[w] - &f.values[u]) / &edge.len)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeViolation {
    pub vertex: String,
    pub defect: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeReport {
    pub vertices_checked: usize,
    pub violations: Vec<SlopeViolation>,
}

impl SlopeReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sums the outgoing slopes along edges and rays at each vertex and reports
/// every vertex where the sum is not zero.
pub fn check_slope_formula(g: &MetricGraph, f: &PLFunction) -> SlopeReport {
    let mut sums: BTreeMap<&str, Rational> = g.vertices.iter().map(|v| (v.as_str(), Rational::zero())).collect();
    for e in &g.edges {
        let s = (&f.values[&e.b] - &f.values[&e.a]) / &e.len;
        *sums.get_mut(e.a.as_str()).expect("vertex") += &s;
        *sums.get_mut(e.b.as_str()).expect("vertex") -= &s;
    }
    for r in &g.rays {
        *sums.get_mut(r.base.as_str()).expect("vertex") += Rational::from_integer(f.ray_slopes[&r.id].clone());
    }
    let violations = g
        .vertices
        .iter()
        .filter(|v| !sums[v.as_str()].is_zero())
        .map(|v| SlopeViolation { vertex: v.clone(), defect: sums[v.as_str()].clone() })
        .collect();
    SlopeReport { vertices_checked: g.vertices.len(), violations }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphEdgeDoc {
    pub a: String,
    pub b: String,
    pub len: QStr,
}

/// JSON layout `{vertices: [id], edges: [{a, b, len}], rays: [{base, id}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<GraphEdgeDoc>,
    #[serde(default)]
    pub rays: Vec<GraphRay>,
}

impl TryFrom<GraphDoc> for MetricGraph {
    type Error = SkeletonError;

    fn try_from(d: GraphDoc) -> Result<Self, SkeletonError> {
        let edges = d.edges.into_iter().map(|e| GraphEdge { a: e.a, b: e.b, len: e.len.0 }).collect();
        MetricGraph::new(d.vertices, edges, d.rays)
    }
}

impl From<MetricGraph> for GraphDoc {
    fn from(g: MetricGraph) -> Self {
        GraphDoc {
            vertices: g.vertices,
            edges: g.edges.into_iter().map(|e| GraphEdgeDoc { a: e.a, b: e.b, len: QStr(e.len) }).collect(),
            rays: g.rays,
        }
    }
}

/// JSON layout `{values: {id: "p/q"}, raySlopes: {id: int}}`; validated
/// against a graph by [`PLFunctionDoc::resolve`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PLFunctionDoc {
    pub values: BTreeMap<String, QStr>,
    #[serde(rename = "raySlopes", default)]
    pub ray_slopes: BTreeMap<String, ZInt>,
}

impl PLFunctionDoc {
    pub fn resolve(self, g: &MetricGraph) -> Result<PLFunction, SkeletonError> {
        PLFunction::new(
            g,
            self.values.into_iter().map(|(k, v)| (k, v.0)).collect(),
            self.ray_slopes.into_iter().map(|(k, v)| (k, v.0)).collect(),
        )
    }
}

impl From<&PLFunction> for PLFunctionDoc {
    fn from(f: &PLFunction) -> Self {
        PLFunctionDoc {
            values: f.values.iter().map(|(k, v)| (k.clone(), QStr(v.clone()))).collect(),
            ray_slopes: f.ray_slopes.iter().map(|(k, v)| (k.clone(), ZInt(v.clone()))).collect(),
        }
    }
}
