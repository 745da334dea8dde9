//! Finite directed multigraph representation, validation, paths, and
//! reachability.
//!
//! Vertices and edges carry user-supplied names; internally both are indexed
//! by declaration order. Parallel edges and self-loops are permitted. All
//! name-level output is ordered lexicographically for determinism.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::{Error, Result};

/// A single directed edge `source --name--> range`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: u32,
    pub range: u32,
}

/// A finite directed multigraph `E = (E^0, E^1, r, s)`.
///
/// Immutable after construction; every operation on it is a pure function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, u32>,
    out: Vec<Vec<u32>>,
    incoming: Vec<Vec<u32>>,
}

/// Input files follow the strict grammar; programmatic construction (used by
/// the derived-graph builders for names like `e*` and `~f`) only needs names
/// that survive whitespace-splitting serialization.
fn valid_name(s: &str, line: usize) -> bool {
    if line > 0 {
        !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    } else {
        !s.is_empty() && !s.starts_with('#') && !s.chars().any(char::is_whitespace)
    }
}

impl Graph {
    /// Builds a graph from named vertices and `(edge, source, range)` triples,
    /// validating name uniqueness and endpoint declarations.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut g = Graph {
            vertices: Vec::new(),
            edges: Vec::new(),
            vertex_index: HashMap::new(),
            out: Vec::new(),
            incoming: Vec::new(),
        };
        for v in vertices {
            g.add_vertex(v.into(), 0)?;
        }
        for (name, s, r) in edges {
            g.add_edge(name.into(), &s.into(), &r.into(), 0)?;
        }
        Ok(g)
    }

    fn add_vertex(&mut self, name: String, line: usize) -> Result<()> {
        if !valid_name(&name, line) {
            return Err(Error::Parse {
                line,
                message: format!("invalid vertex name `{name}`"),
            });
        }
        if self.vertex_index.contains_key(&name) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate vertex name `{name}`"),
            });
        }
        let idx = self.vertices.len() as u32;
        self.vertex_index.insert(name.clone(), idx);
        self.vertices.push(name);
        self.out.push(Vec::new());
        self.incoming.push(Vec::new());
        Ok(())
    }

    fn add_edge(&mut self, name: String, source: &str, range: &str, line: usize) -> Result<()> {
        if !valid_name(&name, line) {
            return Err(Error::Parse {
                line,
                message: format!("invalid edge name `{name}`"),
            });
        }
        if self.edges.iter().any(|e| e.name == name) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge name `{name}`"),
            });
        }
        let s = *self.vertex_index.get(source).ok_or_else(|| Error::Parse {
            line,
            message: format!("undeclared endpoint `{source}`"),
        })?;
        let r = *self.vertex_index.get(range).ok_or_else(|| Error::Parse {
            line,
            message: format!("undeclared endpoint `{range}`"),
        })?;
        let idx = self.edges.len() as u32;
        self.edges.push(Edge {
            name,
            source: s,
            range: r,
        });
        self.out[s as usize].push(idx);
        self.incoming[r as usize].push(idx);
        Ok(())
    }

    /// Parses the line-oriented graph text format.
    ///
    /// ```text
    /// # comment
    /// vertex NAME
    /// edge NAME SOURCE RANGE
    /// ```
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph {
            vertices: Vec::new(),
            edges: Vec::new(),
            vertex_index: HashMap::new(),
            out: Vec::new(),
            incoming: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", name] => g.add_vertex((*name).to_owned(), line)?,
                ["edge", name, s, r] => g.add_edge((*name).to_owned(), s, r, line)?,
                ["vertex", ..] => {
                    return Err(Error::Parse {
                        line,
                        message: "expected `vertex NAME`".into(),
                    })
                }
                ["edge", ..] => {
                    return Err(Error::Parse {
                        line,
                        message: "expected `edge NAME SOURCE RANGE`".into(),
                    })
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unrecognized directive `{}`", tokens[0]),
                    })
                }
            }
        }
        Ok(g)
    }

    /// Emits the text format: vertices first in declaration order, then edges.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str("vertex ");
            out.push_str(v);
            out.push('\n');
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.name,
                self.vertices[e.source as usize],
                self.vertices[e.range as usize]
            ));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.vertices[v as usize]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Result<u32> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn edge(&self, e: u32) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge indices with source `v`, i.e. `s^{-1}(v)`.
    pub fn out_edges(&self, v: u32) -> &[u32] {
        &self.out[v as usize]
    }

    /// Edge indices with range `v`, i.e. `r^{-1}(v)`.
    pub fn in_edges(&self, v: u32) -> &[u32] {
        &self.incoming[v as usize]
    }

    pub fn is_sink(&self, v: u32) -> bool {
        self.out[v as usize].is_empty()
    }

    /// The set of vertices emitting no edges.
    pub fn sinks(&self) -> VertexSet {
        (0..self.vertex_count() as u32)
            .filter(|&v| self.is_sink(v))
            .collect()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = u32> {
        0..self.vertex_count() as u32
    }

    /// All vertices reachable from `v`, including `v` itself (length-0 path).
    pub fn reachable_from(&self, v: u32) -> VertexSet {
        let mut seen = VertexSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &e in self.out_edges(u) {
                let w = self.edges[e as usize].range;
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// True iff `v >= w`, i.e. some path runs from `v` to `w`. Reflexive.
    pub fn reaches(&self, v: u32, w: u32) -> bool {
        self.reachable_from(v).contains(w)
    }

    pub fn reaches_named(&self, v: &str, w: &str) -> Result<bool> {
        Ok(self.reaches(self.vertex(v)?, self.vertex(w)?))
    }

    /// The tree `T(X)`: everything reachable from `X`. This is the smallest
    /// hereditary superset of `X`.
    pub fn tree(&self, x: &VertexSet) -> VertexSet {
        let mut seen = x.clone();
        let mut queue: VecDeque<u32> = x.iter().collect();
        while let Some(u) = queue.pop_front() {
            for &e in self.out_edges(u) {
                let w = self.edges[e as usize].range;
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Full vertex set `E^0`.
    pub fn full_set(&self) -> VertexSet {
        self.vertex_ids().collect()
    }
}

/// A subset of `E^0`, stored as vertex indices of the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(BTreeSet<u32>);

impl VertexSet {
    pub fn new() -> VertexSet {
        VertexSet(BTreeSet::new())
    }

    pub fn from_names<'a, I: IntoIterator<Item = &'a str>>(g: &Graph, names: I) -> Result<VertexSet> {
        let mut set = VertexSet::new();
        for name in names {
            set.insert(g.vertex(name)?);
        }
        Ok(set)
    }

    /// Interprets the low `n` bits of `mask` as membership.
    pub fn from_mask(mask: u64, n: usize) -> VertexSet {
        (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect()
    }

    pub fn insert(&mut self, v: u32) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: u32) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    /// `E^0 \ self` relative to the ambient graph.
    pub fn complement(&self, g: &Graph) -> VertexSet {
        g.vertex_ids().filter(|v| !self.contains(*v)).collect()
    }

    /// Member names sorted lexicographically.
    pub fn names(&self, g: &Graph) -> Vec<String> {
        let mut names: Vec<String> = self.iter().map(|v| g.vertex_name(v).to_owned()).collect();
        names.sort();
        names
    }

    /// Deterministic display key: `(size, lexicographic member names)`.
    pub fn order_key(&self, g: &Graph) -> (usize, Vec<String>) {
        (self.len(), self.names(g))
    }

    pub fn display(&self, g: &Graph) -> String {
        self.names(g).join(",")
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> VertexSet {
        VertexSet(iter.into_iter().collect())
    }
}

/// A path `e_1 ... e_n` with `r(e_i) = s(e_{i+1})`. A length-0 path is a
/// single vertex, so `v >= v` holds by definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    source: u32,
    edges: Vec<u32>,
}

impl Path {
    pub fn vertex(v: u32) -> Path {
        Path {
            source: v,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(g: &Graph, edges: Vec<u32>) -> Result<Path> {
        if edges.is_empty() {
            return Err(Error::Precondition(
                "a positive-length path needs at least one edge".into(),
            ));
        }
        for w in edges.windows(2) {
            if g.edge(w[0]).range != g.edge(w[1]).source {
                return Err(Error::Precondition(format!(
                    "edges `{}` and `{}` do not compose",
                    g.edge(w[0]).name,
                    g.edge(w[1]).name
                )));
            }
        }
        Ok(Path {
            source: g.edge(edges[0]).source,
            edges,
        })
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn range(&self, g: &Graph) -> u32 {
        match self.edges.last() {
            Some(&e) => g.edge(e).range,
            None => self.source,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_indices(&self) -> &[u32] {
        &self.edges
    }

    /// The vertex set `mu^0` of the path.
    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        let mut set = VertexSet::new();
        set.insert(self.source);
        for &e in &self.edges {
            set.insert(g.edge(e).range);
        }
        set
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
