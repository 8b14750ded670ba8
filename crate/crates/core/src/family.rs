//! The three layered families of oriented m-partite graphs.
//!
//! Vertex `x_{ij}` is the `j`-th vertex of part `V_i`; vertex order is
//! lexicographic in `(i, j)`.
//!
//! * [`Family::PathLayered`]: `m >= 2`, every consecutive pair
//!   `V_i -> V_{i+1}` is complete bipartite, interior weights are at least 2.
//! * [`Family::WhiskerLayered`]: `m >= 2`, `|V_1| <= |V_2|`, the first layer
//!   is the matching `x_{2j} -> x_{1j}`, the layers `V_i -> V_{i+1}` for
//!   `i >= 2` are complete, interior weights are at least 2.
//! * [`Family::CyclicLayered`]: `m >= 3`, all `m` pairs `V_i -> V_{i+1}` are
//!   complete with `V_{m+1} = V_1`, every weight is at least 2.
//!
//! Sources carry weight 1 after normalization, so weight lower bounds are
//! only enforced on vertices that have an incoming edge.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::{Vertex, VertexWeightedDigraph};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_WEIGHT: u32 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PathLayered,
    WhiskerLayered,
    CyclicLayered,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::PathLayered, Family::WhiskerLayered, Family::CyclicLayered];

    pub fn min_parts(self) -> usize {
        match self {
            Family::PathLayered | Family::WhiskerLayered => 2,
            Family::CyclicLayered => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PathLayered => "path-layered",
            Family::WhiskerLayered => "whisker-layered",
            Family::CyclicLayered => "cyclic-layered",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "family1" | "path" | "path-layered" => Ok(Family::PathLayered),
            "2" | "family2" | "whisker" | "whisker-layered" => Ok(Family::WhiskerLayered),
            "3" | "family3" | "cyclic" | "cyclic-layered" => Ok(Family::CyclicLayered),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A failed family hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    TooFewParts { parts: usize, min: usize },
    Orientation { tail: String, head: String, tail_part: usize, head_part: usize },
    MissingEdge { tail: String, head: String },
    Matching { detail: String },
    PartSizes { first: usize, second: usize },
    /// `everywhere` is set when the family bounds every weight, not only
    /// interior ones.
    Weight { vertex: String, weight: u32, everywhere: bool },
    Isolated { vertex: String },
    NoPartition,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewParts { parts, min } => write!(f, "{parts} parts but at least {min} are required"),
            Violation::Orientation { tail, head, tail_part, head_part } => {
                write!(f, "edge {tail} -> {head} runs from V_{tail_part} to V_{head_part}")
            }
            Violation::MissingEdge { tail, head } => write!(f, "layer not complete: missing edge {tail} -> {head}"),
            Violation::Matching { detail } => write!(f, "first layer is not a matching into V_1: {detail}"),
            Violation::PartSizes { first, second } => write!(f, "|V_1| = {first} > |V_2| = {second}"),
            Violation::Weight { vertex, weight, everywhere: false } => {
                write!(f, "w({vertex}) = {weight} < 2 but {vertex} is not in V_1 or V_m")
            }
            Violation::Weight { vertex, weight, everywhere: true } => {
                write!(f, "w({vertex}) = {weight} < 2 but every weight must be at least 2")
            }
            Violation::Isolated { vertex } => write!(f, "vertex {vertex} is isolated"),
            Violation::NoPartition => f.write_str("no partition given and none could be recovered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub family: Family,
    pub violations: Vec<Violation>,
    /// Whether the partition used was recovered from the edge structure.
    pub recovered_partition: bool,
}

impl MembershipReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

fn vertex_id(part: usize, idx: usize) -> String {
    if part < 10 && idx < 10 {
        format!("x{part}{idx}")
    } else {
        format!("x{part}_{idx}")
    }
}

/// Checks `graph` (weights taken after source normalization) against the
/// hypotheses of `family` using the graph's own partition.
pub fn validate(graph: &VertexWeightedDigraph, family: Family) -> Result<MembershipReport> {
    let parts = graph.parts().ok_or(Error::MissingPartition)?;
    Ok(MembershipReport { family, violations: violations(graph, parts, family), recovered_partition: false })
}

/// Like [`validate`], but recovers a partition from the edges when the graph
/// has none. Returns the graph with the partition that was checked.
pub fn validate_or_recover(
    graph: &VertexWeightedDigraph,
    family: Family,
) -> Result<(MembershipReport, Option<VertexWeightedDigraph>)> {
    if graph.parts().is_some() {
        return Ok((validate(graph, family)?, Some(graph.clone())));
    }
    match recover_partition(graph, family) {
        Some(parts) => {
            let with = graph.clone().with_parts(parts)?;
            let mut report = validate(&with, family)?;
            report.recovered_partition = true;
            Ok((report, Some(with)))
        }
        None => Ok((
            MembershipReport { family, violations: vec![Violation::NoPartition], recovered_partition: true },
            None,
        )),
    }
}

fn violations(graph: &VertexWeightedDigraph, parts: &[Vec<usize>], family: Family) -> Vec<Violation> {
    let normalized = graph.normalize_sources();
    let id = |v: usize| graph.vertices()[v].id.clone();
    let m = parts.len();
    let mut part_of = vec![0; graph.num_vertices()];
    for (p, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = p;
        }
    }
    let edges: HashSet<(usize, usize)> = graph.edges().iter().copied().collect();
    let mut out = Vec::new();

    if m < family.min_parts() {
        out.push(Violation::TooFewParts { parts: m, min: family.min_parts() });
    }
    for v in 0..graph.num_vertices() {
        if graph.is_isolated(v) {
            out.push(Violation::Isolated { vertex: id(v) });
        }
    }

    let allowed = |pt: usize, ph: usize| match family {
        Family::PathLayered => ph == pt + 1,
        Family::WhiskerLayered => (pt == 1 && ph == 0) || (pt >= 1 && ph == pt + 1),
        Family::CyclicLayered => m > 0 && ph == (pt + 1) % m,
    };
    for &(a, b) in graph.edges() {
        if !allowed(part_of[a], part_of[b]) {
            out.push(Violation::Orientation {
                tail: id(a),
                head: id(b),
                tail_part: part_of[a] + 1,
                head_part: part_of[b] + 1,
            });
        }
    }

    let complete_layers: Vec<(usize, usize)> = match family {
        Family::PathLayered => (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        Family::WhiskerLayered => (1..m.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        Family::CyclicLayered if m >= 2 => (0..m).map(|i| (i, (i + 1) % m)).collect(),
        Family::CyclicLayered => Vec::new(),
    };
    for (from, to) in complete_layers {
        for &u in &parts[from] {
            for &v in &parts[to] {
                if !edges.contains(&(u, v)) {
                    out.push(Violation::MissingEdge { tail: id(u), head: id(v) });
                }
            }
        }
    }

    if family == Family::WhiskerLayered && m >= 2 {
        let (first, second) = (parts[0].len(), parts[1].len());
        if first > second {
            out.push(Violation::PartSizes { first, second });
        }
        let mut tails = HashSet::new();
        for &x in &parts[0] {
            let ins: Vec<usize> =
                graph.edges().iter().filter(|&&(a, b)| b == x && part_of[a] == 1).map(|&(a, _)| a).collect();
            match ins[..] {
                [t] => {
                    if !tails.insert(t) {
                        out.push(Violation::Matching { detail: format!("{} has two matching edges", id(t)) });
                    }
                }
                [] => out.push(Violation::Matching { detail: format!("{} is not matched", id(x)) }),
                _ => out.push(Violation::Matching { detail: format!("{} is matched more than once", id(x)) }),
            }
        }
    }

    let needs_weight = |v: usize| match family {
        Family::PathLayered | Family::WhiskerLayered => part_of[v] != 0 && part_of[v] + 1 != m,
        Family::CyclicLayered => true,
    };
    for v in 0..graph.num_vertices() {
        let w = normalized.weight(v);
        if needs_weight(v) && !normalized.is_source(v) && w < 2 {
            out.push(Violation::Weight {
                vertex: id(v),
                weight: w,
                everywhere: family == Family::CyclicLayered,
            });
        }
    }
    out
}

/// Best-effort recovery of an ordered partition that makes `graph` a member
/// of `family`. Returns `None` when no candidate validates.
pub fn recover_partition(graph: &VertexWeightedDigraph, family: Family) -> Option<Vec<Vec<usize>>> {
    let candidates: Vec<Vec<Vec<usize>>> = match family {
        Family::PathLayered => longest_path_layers(graph, &[]).into_iter().collect(),
        Family::WhiskerLayered => whisker_candidates(graph),
        Family::CyclicLayered => cyclic_layers(graph).into_iter().collect(),
    };
    candidates.into_iter().find(|parts| {
        graph
            .clone()
            .with_parts(parts.clone())
            .map(|g| violations(&g, parts, family).is_empty())
            .unwrap_or(false)
    })
}

/// Layer of a vertex = length of the longest directed path ending there.
/// Vertices in `skip` are ignored. `None` on cycles or isolated vertices.
fn longest_path_layers(graph: &VertexWeightedDigraph, skip: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = graph.num_vertices();
    let keep: Vec<bool> = (0..n).map(|v| !skip.contains(&v)).collect();
    let edges: Vec<(usize, usize)> = graph.edges().iter().copied().filter(|&(a, b)| keep[a] && keep[b]).collect();
    let mut indeg = vec![0usize; n];
    for &(_, b) in &edges {
        indeg[b] += 1;
    }
    let mut layer = vec![0usize; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| keep[v] && indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = queue.pop() {
        seen += 1;
        for &(a, b) in &edges {
            if a == u {
                layer[b] = layer[b].max(layer[u] + 1);
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push(b);
                }
            }
        }
    }
    if seen != keep.iter().filter(|&&k| k).count() {
        return None;
    }
    let depth = (0..n).filter(|&v| keep[v]).map(|v| layer[v]).max()?;
    let mut parts = vec![Vec::new(); depth + 1];
    for v in (0..n).filter(|&v| keep[v]) {
        if graph.is_isolated(v) {
            return None;
        }
        parts[layer[v]].push(v);
    }
    Some(parts)
}

fn whisker_candidates(graph: &VertexWeightedDigraph) -> Vec<Vec<Vec<usize>>> {
    // V_1 consists of sinks hanging off a single source
    let pendant: Vec<usize> = (0..graph.num_vertices())
        .filter(|&v| {
            graph.out_degree(v) == 0
                && graph.in_degree(v) == 1
                && graph.edges().iter().any(|&(a, b)| b == v && graph.is_source(a))
        })
        .collect();
    if pendant.is_empty() || pendant.len() > 16 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 1u32..1 << pendant.len() {
        let first: Vec<usize> = (0..pendant.len()).filter(|k| mask >> k & 1 == 1).map(|k| pendant[k]).collect();
        if let Some(rest) = longest_path_layers(graph, &first) {
            let mut parts = vec![first];
            parts.extend(rest);
            out.push(parts);
        }
    }
    out
}

fn cyclic_layers(graph: &VertexWeightedDigraph) -> Option<Vec<Vec<usize>>> {
    let n = graph.num_vertices();
    if n == 0 {
        return None;
    }
    let mut level: Vec<Option<i64>> = vec![None; n];
    level[0] = Some(0);
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        let lu = level[u].expect("visited");
        for &(a, b) in graph.edges() {
            let (v, lv) = if a == u {
                (b, lu + 1)
            } else if b == u {
                (a, lu - 1)
            } else {
                continue;
            };
            if level[v].is_none() {
                level[v] = Some(lv);
                stack.push(v);
            }
        }
    }
    let level: Vec<i64> = level.into_iter().collect::<Option<_>>()?;
    let m = graph
        .edges()
        .iter()
        .map(|&(a, b)| (level[a] + 1 - level[b]).unsigned_abs())
        .fold(0u64, num_integer::gcd);
    if m < 3 {
        return None;
    }
    let mut parts = vec![Vec::new(); m as usize];
    for (v, &l) in level.iter().enumerate() {
        parts[l.rem_euclid(m as i64) as usize].push(v);
    }
    if parts.iter().any(Vec::is_empty) {
        return None;
    }
    Some(parts)
}

/// A validated member of one of the families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    family: Family,
    part_sizes: Vec<usize>,
    graph: VertexWeightedDigraph,
}

impl FamilyInstance {
    /// Wraps a graph that already carries a partition, after normalizing
    /// sources and checking the family hypotheses.
    pub fn from_graph(graph: &VertexWeightedDigraph, family: Family) -> Result<Self> {
        let graph = graph.normalize_sources();
        let report = validate(&graph, family)?;
        if !report.passes() {
            return Err(Error::Hypotheses(report.messages()));
        }
        let part_sizes = graph.parts().expect("validated").iter().map(Vec::len).collect();
        Ok(Self { family, part_sizes, graph })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn graph(&self) -> &VertexWeightedDigraph {
        &self.graph
    }

    /// Weights grouped by part, in vertex order.
    pub fn weights(&self) -> Vec<Vec<u32>> {
        self.graph
            .parts()
            .expect("instances carry a partition")
            .iter()
            .map(|p| p.iter().map(|&v| self.graph.weight(v)).collect())
            .collect()
    }

    /// Stable key `family:t1,t2,..:w11,w12|w21,..` used to order and
    /// deduplicate instances.
    pub fn key(&self) -> String {
        instance_key(self.family, &self.part_sizes, &self.weights())
    }
}

pub(crate) fn instance_key(family: Family, sizes: &[usize], weights: &[Vec<u32>]) -> String {
    let sizes: Vec<String> = sizes.iter().map(ToString::to_string).collect();
    let weights: Vec<String> =
        weights.iter().map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
    format!("{family}:{}:{}", sizes.join(","), weights.join("|"))
}

/// Builds the canonical member of `family` with the given part sizes and
/// per-part weights (weights of sources are replaced by 1).
pub fn build_family(family: Family, part_sizes: &[usize], weights: &[Vec<u32>]) -> Result<FamilyInstance> {
    build_family_capped(family, part_sizes, weights, DEFAULT_MAX_WEIGHT)
}

pub fn build_family_capped(
    family: Family,
    part_sizes: &[usize],
    weights: &[Vec<u32>],
    max_weight: u32,
) -> Result<FamilyInstance> {
    if part_sizes.len() != weights.len() || part_sizes.iter().zip(weights).any(|(&t, w)| t != w.len()) {
        return Err(Error::Shape("weights must list one value per vertex of each part".into()));
    }
    if part_sizes.contains(&0) {
        return Err(Error::Shape("parts must be nonempty".into()));
    }
    let m = part_sizes.len();
    let mut vertices = Vec::new();
    let mut parts = Vec::with_capacity(m);
    for (i, (&t, ws)) in part_sizes.iter().zip(weights).enumerate() {
        let mut part = Vec::with_capacity(t);
        for (j, &w) in ws.iter().enumerate() {
            if w == 0 || w > max_weight {
                return Err(Error::Shape(format!(
                    "w({}) = {w} is outside 1..={max_weight}",
                    vertex_id(i + 1, j + 1)
                )));
            }
            part.push(vertices.len());
            vertices.push(Vertex { id: vertex_id(i + 1, j + 1), weight: w });
        }
        parts.push(part);
    }
    let complete = |from: usize, to: usize, edges: &mut Vec<(usize, usize)>| {
        for &u in &parts[from] {
            for &v in &parts[to] {
                edges.push((u, v));
            }
        }
    };
    let mut edges = Vec::new();
    match family {
        Family::PathLayered => (0..m.saturating_sub(1)).for_each(|i| complete(i, i + 1, &mut edges)),
        Family::WhiskerLayered => {
            if m >= 2 {
                for (&x1, &x2) in parts[0].iter().zip(&parts[1]) {
                    edges.push((x2, x1));
                }
            }
            (1..m.saturating_sub(1)).for_each(|i| complete(i, i + 1, &mut edges));
        }
        Family::CyclicLayered => {
            if m >= 3 {
                (0..m).for_each(|i| complete(i, (i + 1) % m, &mut edges));
            }
        }
    }
    let graph = VertexWeightedDigraph::new(vertices, edges, Some(parts))?.normalize_sources();
    FamilyInstance::from_graph(&graph, family)
}
