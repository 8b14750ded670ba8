//! Vertex-weighted oriented graphs and their edge ideals.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{AmbientRing, Monomial, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub weight: u32,
}

/// Canonical graph interchange format.
///
/// ```json
/// {"vertices":[{"id":"x11","weight":1},{"id":"x21","weight":2}],
///  "edges":[["x11","x21"]],
///  "parts":[["x11"],["x21"]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<String>>>,
}

/// An oriented graph with positive vertex weights and an optional ordered
/// partition `V_1, ..., V_m`.
///
/// Construction rejects self-loops, repeated or bidirected edges, unknown
/// endpoints, zero weights, and partitions that are not a disjoint cover or
/// that contain an edge inside one part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWeightedDigraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    parts: Option<Vec<Vec<usize>>>,
}

impl VertexWeightedDigraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>, parts: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(Error::Graph(format!("duplicate vertex id {}", v.id)));
            }
            if v.weight == 0 {
                return Err(Error::Graph(format!("vertex {} has weight 0", v.id)));
            }
        }
        let n = vertices.len();
        let mut pairs = BTreeSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::Graph(format!("edge ({a}, {b}) has an unknown endpoint")));
            }
            if a == b {
                return Err(Error::Graph(format!("self-loop at {}", vertices[a].id)));
            }
            if !pairs.insert((a.min(b), a.max(b))) {
                return Err(Error::Graph(format!(
                    "more than one edge between {} and {}",
                    vertices[a].id, vertices[b].id
                )));
            }
        }
        let graph = Self { vertices, edges, parts: None };
        match parts {
            Some(p) => graph.with_parts(p),
            None => Ok(graph),
        }
    }

    /// Replaces the partition after checking it is a disjoint cover with no
    /// edge inside a part.
    pub fn with_parts(mut self, parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = self.vertices.len();
        let mut owner = vec![None; n];
        for (p, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::Graph(format!("part {} is empty", p + 1)));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::Graph(format!("part {} names an unknown vertex", p + 1)));
                }
                if owner[v].replace(p).is_some() {
                    return Err(Error::Graph(format!("vertex {} is in two parts", self.vertices[v].id)));
                }
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(Error::Graph(format!("vertex {} is in no part", self.vertices[v].id)));
        }
        for &(a, b) in &self.edges {
            if owner[a] == owner[b] {
                return Err(Error::Graph(format!(
                    "edge {} -> {} lies inside one part",
                    self.vertices[a].id, self.vertices[b].id
                )));
            }
        }
        self.parts = Some(parts);
        Ok(self)
    }

    pub fn from_json_value(json: &GraphJson) -> Result<Self> {
        let index: HashMap<&str, usize> =
            json.vertices.iter().enumerate().map(|(k, v)| (v.id.as_str(), k)).collect();
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Graph(format!("unknown vertex id {id}")))
        };
        let edges = json
            .edges
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let parts = json
            .parts
            .as_ref()
            .map(|ps| {
                ps.iter()
                    .map(|p| p.iter().map(|id| lookup(id)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Self::new(json.vertices.clone(), edges, parts)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&json)
    }

    pub fn to_json_value(&self) -> GraphJson {
        let id = |v: usize| self.vertices[v].id.clone();
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(a, b)| [id(a), id(b)]).collect(),
            parts: self.parts.as_ref().map(|ps| ps.iter().map(|p| p.iter().map(|&v| id(v)).collect()).collect()),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn parts(&self) -> Option<&[Vec<usize>]> {
        self.parts.as_deref()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.vertices[v].weight
    }

    pub fn total_weight(&self) -> u64 {
        self.vertices.iter().map(|v| v.weight as u64).sum()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, b)| b == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, _)| a == v).count()
    }

    /// At least one outgoing and no incoming edge.
    pub fn is_source(&self, v: usize) -> bool {
        self.out_degree(v) > 0 && self.in_degree(v) == 0
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.edges.iter().all(|&(a, b)| a != v && b != v)
    }

    /// Sets the weight of every source to 1. Idempotent.
    pub fn normalize_sources(&self) -> Self {
        let mut out = self.clone();
        for v in 0..out.vertices.len() {
            if self.is_source(v) {
                out.vertices[v].weight = 1;
            }
        }
        out
    }

    /// Ring with one variable per vertex, in vertex order, labelled by id.
    pub fn ring(&self) -> Result<AmbientRing> {
        AmbientRing::new(self.vertices.iter().map(|v| v.id.clone()))
    }

    /// `I(D) = (x_tail * x_head^{w(head)})` over all edges.
    pub fn edge_ideal(&self) -> Result<MonomialIdeal> {
        if self.edges.is_empty() {
            return Err(Error::Edgeless);
        }
        let ring = Arc::new(self.ring()?);
        let n = self.vertices.len();
        let gens = self.edges.iter().map(|&(tail, head)| {
            let mut exps = vec![0; n];
            exps[tail] = 1;
            exps[head] = self.vertices[head].weight;
            Monomial::new(exps)
        });
        MonomialIdeal::minimalize(gens, ring)
    }

    /// Variables in the polarization of the edge ideal: `w(v)` for vertices
    /// with an incoming edge, 1 for sources, 0 for isolated vertices.
    pub fn polarized_num_vars(&self) -> usize {
        (0..self.vertices.len())
            .map(|v| {
                if self.in_degree(v) > 0 {
                    self.vertices[v].weight as usize
                } else if self.out_degree(v) > 0 {
                    1
                } else {
                    0
                }
            })
            .sum()
    }
}
