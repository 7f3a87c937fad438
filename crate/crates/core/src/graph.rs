//! Finite directed graphs `E = (E⁰, E¹, s, r)`.
//!
//! A validated [`Graph`] stores vertices and edges sorted by id, so index order
//! coincides with the lexicographic order of ids. Every other module works with
//! the dense indices [`VertexId`] and [`EdgeId`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("dangling endpoint {endpoint} on edge {edge}")]
    DanglingEndpoint { edge: String, endpoint: String },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("id {0} used for both a vertex and an edge")]
    IdCollision(String),
    #[error("invalid id {0:?}: ids are [A-Za-z_][A-Za-z0-9_]*")]
    InvalidId(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex set is not hereditary")]
    NotHereditary,
    #[error("vertex set is not saturated")]
    NotSaturated,
    #[error("malformed graph file: {0}")]
    Malformed(String),
}

/// On-disk graph description: `{"name", "vertices", "edges": [{"id","src","dst"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl EdgeSpec {
    pub fn new(id: &str, src: &str, dst: &str) -> Self {
        EdgeSpec {
            id: id.into(),
            src: src.into(),
            dst: dst.into(),
        }
    }
}

impl GraphSpec {
    pub fn new(name: &str, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Self {
        GraphSpec {
            name: name.into(),
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(e, s, d)| EdgeSpec::new(e, s, d))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))
    }

    pub fn validate(&self) -> Result<Graph, GraphError> {
        Graph::validate(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: VertexId,
    pub dst: VertexId,
}

/// A validated finite graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
}

pub(crate) fn is_identifier(id: &str) -> bool {
    let mut chars = id.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Graph {
    /// Checks the raw description and builds the indexed graph.
    pub fn validate(spec: &GraphSpec) -> Result<Graph, GraphError> {
        let mut vertex_set = BTreeSet::new();
        for v in &spec.vertices {
            if !is_identifier(v) {
                return Err(GraphError::InvalidId(v.clone()));
            }
            if !vertex_set.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut edge_map = BTreeMap::new();
        for e in &spec.edges {
            if !is_identifier(&e.id) {
                return Err(GraphError::InvalidId(e.id.clone()));
            }
            if vertex_set.contains(&e.id) {
                return Err(GraphError::IdCollision(e.id.clone()));
            }
            for endpoint in [&e.src, &e.dst] {
                if !vertex_set.contains(endpoint) {
                    return Err(GraphError::DanglingEndpoint {
                        edge: e.id.clone(),
                        endpoint: endpoint.clone(),
                    });
                }
            }
            if edge_map
                .insert(e.id.clone(), (e.src.clone(), e.dst.clone()))
                .is_some()
            {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
        }

        let vertices: Vec<String> = vertex_set.into_iter().collect();
        let vertex_index: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as VertexId))
            .collect();
        let edges: Vec<Edge> = edge_map
            .into_iter()
            .map(|(id, (s, d))| Edge {
                id,
                src: vertex_index[&s],
                dst: vertex_index[&d],
            })
            .collect();
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i as EdgeId))
            .collect();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.src as usize].push(i as EdgeId);
        }
        Ok(Graph {
            name: spec.name.clone(),
            vertices,
            edges,
            vertex_index,
            edge_index,
            out_edges,
        })
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        GraphSpec::from_json(text)?.validate()
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<Graph, GraphError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| GraphError::Malformed(format!("{}: {e}", path.as_ref().display())))?;
        Graph::from_json(&text)
    }

    /// The empty graph; its Leavitt path algebra is the zero algebra.
    pub fn empty(name: &str) -> Graph {
        Graph::validate(&GraphSpec::new(name, &[], &[])).expect("empty graph is valid")
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    src: self.vertices[e.src as usize].clone(),
                    dst: self.vertices[e.dst as usize].clone(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertices.len() as VertexId
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edges.len() as EdgeId
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e as usize].id
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edges[e as usize].src
    }

    /// Range (target) of an edge.
    pub fn r(&self, e: EdgeId) -> VertexId {
        self.edges[e as usize].dst
    }

    /// Edges emitted by `v`, in id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v as usize]
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.out_edges[v as usize].is_empty()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v as usize].is_empty()
    }

    /// The lexicographically least edge emitted by a regular vertex.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edges[v as usize].first().copied()
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn classify_vertices(&self) -> BTreeMap<String, VertexKind> {
        self.vertex_ids()
            .map(|v| {
                let kind = if self.is_regular(v) {
                    VertexKind::Regular
                } else {
                    VertexKind::Sink
                };
                (self.vertex_name(v).to_string(), kind)
            })
            .collect()
    }

    /// Number of paths of each length `0..=max_len` ending at each vertex:
    /// `counts[n][v]`.
    pub fn path_counts(&self, max_len: usize) -> Vec<Vec<u128>> {
        let mut counts = vec![vec![1u128; self.vertex_count()]];
        for n in 1..=max_len {
            let prev = &counts[n - 1];
            let mut next = vec![0u128; self.vertex_count()];
            for e in &self.edges {
                next[e.dst as usize] += prev[e.src as usize];
            }
            counts.push(next);
        }
        counts
    }

    /// All paths of length `n`, optionally restricted to those ending at `ending_at`.
    /// Output is sorted in the path order (lexicographic on edge ids).
    pub fn enumerate_paths(&self, n: usize, ending_at: Option<VertexId>) -> Vec<Path> {
        let mut paths: Vec<Path> = self.vertex_ids().map(Path::vertex).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &paths {
                let end = p.range(self);
                for &e in self.out_edges(end) {
                    let mut q = p.clone();
                    q.push(self, e);
                    next.push(q);
                }
            }
            paths = next;
        }
        if let Some(w) = ending_at {
            paths.retain(|p| p.range(self) == w);
        }
        paths.sort();
        paths
    }

    /// True iff the graph has no closed path of positive length.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the edge relation.
        let mut indegree = vec![0usize; self.vertex_count()];
        for e in &self.edges {
            indegree[e.dst as usize] += 1;
        }
        let mut stack: Vec<VertexId> = self
            .vertex_ids()
            .filter(|&v| indegree[v as usize] == 0)
            .collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &e in self.out_edges(v) {
                let w = self.r(e) as usize;
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    stack.push(w as VertexId);
                }
            }
        }
        seen == self.vertex_count()
    }

    /// Length of the longest path, or `None` when the graph has a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let counts = self.path_counts(self.vertex_count());
        Some(
            (0..counts.len())
                .rev()
                .find(|&n| counts[n].iter().any(|&c| c > 0))
                .unwrap_or(0),
        )
    }

    pub fn vertex_set(&self, names: &[impl AsRef<str>]) -> Result<BTreeSet<VertexId>, GraphError> {
        names
            .iter()
            .map(|n| {
                self.vertex(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex(n.as_ref().into()))
            })
            .collect()
    }

    pub fn hereditary_saturated(&self, h: &BTreeSet<VertexId>) -> HereditarySaturated {
        let hereditary = self
            .edges
            .iter()
            .all(|e| !h.contains(&e.src) || h.contains(&e.dst));
        let saturated = self.vertex_ids().all(|v| {
            h.contains(&v)
                || !self.is_regular(v)
                || !self.out_edges(v).iter().all(|&e| h.contains(&self.r(e)))
        });
        HereditarySaturated {
            hereditary,
            saturated,
        }
    }

    /// Restriction to `E⁰ ∖ H` for a hereditary saturated `H`.
    pub fn remove_vertices(&self, h: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        let flags = self.hereditary_saturated(h);
        if !flags.hereditary {
            return Err(GraphError::NotHereditary);
        }
        if !flags.saturated {
            return Err(GraphError::NotSaturated);
        }
        let keep = |v: VertexId| !h.contains(&v);
        let spec = GraphSpec {
            name: self.name.clone(),
            vertices: self
                .vertex_ids()
                .filter(|&v| keep(v))
                .map(|v| self.vertex_name(v).to_string())
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep(e.src) && keep(e.dst))
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    src: self.vertex_name(e.src).to_string(),
                    dst: self.vertex_name(e.dst).to_string(),
                })
                .collect(),
        };
        spec.validate()
    }

    /// Disjoint union; ids of `g1` get prefix `a_`, ids of `g2` get `b_`.
    pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
        let mut spec = GraphSpec {
            name: format!("{}+{}", g1.name, g2.name),
            vertices: Vec::new(),
            edges: Vec::new(),
        };
        for (prefix, g) in [("a_", g1), ("b_", g2)] {
            let s = g.to_spec();
            spec.vertices
                .extend(s.vertices.iter().map(|v| format!("{prefix}{v}")));
            spec.edges.extend(s.edges.iter().map(|e| EdgeSpec {
                id: format!("{prefix}{}", e.id),
                src: format!("{prefix}{}", e.src),
                dst: format!("{prefix}{}", e.dst),
            }));
        }
        spec.validate().expect("prefixed ids cannot collide")
    }

    /// Whether `id` names a vertex or an edge.
    pub(crate) fn has_id(&self, id: &str) -> bool {
        self.vertex_index.contains_key(id) || self.edge_index.contains_key(id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Regular,
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditarySaturated {
    pub hereditary: bool,
    pub saturated: bool,
}

/// A path: a vertex (length 0) or a composable edge sequence.
///
/// `start` is always the source vertex, so two paths are equal iff they agree
/// as edge sequences (or as vertices when empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path {
            start: g.src(e),
            edges: vec![e],
        }
    }

    /// Builds a path from an edge sequence, checking composability.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Option<Path> {
        let first = *edges.first()?;
        let mut p = Path::edge(g, first);
        for &e in &edges[1..] {
            if g.src(e) != p.range(g) {
                return None;
            }
            p.edges.push(e);
        }
        Some(p)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        match self.edges.last() {
            Some(&e) => g.r(e),
            None => self.start,
        }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// Appends an edge; the caller guarantees composability.
    pub(crate) fn push(&mut self, g: &Graph, e: EdgeId) {
        debug_assert_eq!(g.src(e), self.range(g));
        self.edges.push(e);
    }

    /// Drops the last edge; an emptied path becomes the vertex it started at.
    pub(crate) fn pop(&mut self) -> Option<EdgeId> {
        self.edges.pop()
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        if self.edges.is_empty() {
            self.start == other.start
        } else {
            other.edges.starts_with(&self.edges)
        }
    }

    /// `other` with the prefix `self` removed. Requires `self.is_prefix_of(other)`.
    pub(crate) fn strip_from(&self, g: &Graph, other: &Path) -> Path {
        debug_assert!(self.is_prefix_of(other));
        Path {
            start: self.range(g),
            edges: other.edges[self.edges.len()..].to_vec(),
        }
    }

    /// Concatenation `self · tail`; requires `range(self) = source(tail)`.
    pub(crate) fn concat(&self, tail: &Path) -> Path {
        let mut p = self.clone();
        p.edges.extend_from_slice(&tail.edges);
        p
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay {
            path: self,
            graph: g,
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.edges.len().cmp(&other.edges.len()).then_with(|| {
            if self.edges.is_empty() {
                self.start.cmp(&other.start)
            } else {
                self.edges.cmp(&other.edges)
            }
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return f.write_str(self.graph.vertex_name(self.path.start));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(self.graph.edge_name(e))?;
        }
        Ok(())
    }
}

/// Vertex ids reachable from `v` (including `v`), handy for building hereditary sets.
pub fn forward_closure(g: &Graph, seeds: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let mut seen: HashSet<VertexId> = seeds.iter().copied().collect();
    let mut stack: Vec<VertexId> = seeds.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for &e in g.out_edges(v) {
            if seen.insert(g.r(e)) {
                stack.push(g.r(e));
            }
        }
    }
    seen.into_iter().collect()
}
