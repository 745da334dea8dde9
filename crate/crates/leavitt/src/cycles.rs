//! Cycle enumeration, exits, Condition (L), `P_c(E)`, and comet recognition.

use std::collections::HashMap;

use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// A closed path whose edge sources are pairwise distinct, held in canonical
/// rotation: the edge sourced at the lexicographically smallest vertex name
/// comes first. Two cycles differing only by rotation compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<u32>,
}

impl Cycle {
    /// Validates closedness, composability and the distinct-sources
    /// invariant, then canonicalizes the rotation.
    pub fn from_edges(g: &Graph, edges: Vec<u32>) -> Result<Cycle> {
        if edges.is_empty() {
            return Err(Error::Precondition("a cycle has at least one edge".into()));
        }
        let n = edges.len();
        for i in 0..n {
            let next = edges[(i + 1) % n];
            if g.edge(edges[i]).range != g.edge(next).source {
                return Err(Error::Precondition(format!(
                    "edges `{}` and `{}` do not compose",
                    g.edge(edges[i]).name,
                    g.edge(next).name
                )));
            }
        }
        let mut sources: Vec<u32> = edges.iter().map(|&e| g.edge(e).source).collect();
        sources.sort_unstable();
        sources.dedup();
        if sources.len() != n {
            return Err(Error::Precondition(
                "closed path has repeated edge sources, so it is not a cycle".into(),
            ));
        }
        // The smallest vertex name occurs as exactly one edge source.
        let start = (0..n)
            .min_by_key(|&i| g.vertex_name(g.edge(edges[i]).source))
            .unwrap();
        let rotated = edges[start..].iter().chain(&edges[..start]).copied().collect();
        Ok(Cycle { edges: rotated })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edge_indices(&self) -> &[u32] {
        &self.edges
    }

    /// The canonical base vertex (smallest vertex name on the cycle).
    pub fn base_vertex(&self, g: &Graph) -> u32 {
        g.edge(self.edges[0]).source
    }

    /// The vertex set `c^0`; has exactly `len()` elements.
    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        self.edges.iter().map(|&e| g.edge(e).source).collect()
    }

    pub fn edge_names(&self, g: &Graph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge(e).name.clone()).collect()
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("({})", self.edge_names(g).join(" "))
    }
}

/// All cycles up to rotation, each canonical, in deterministic order
/// (by length, then by edge name sequence).
pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    // Anchored DFS: each cycle is found exactly once, rooted at its
    // smallest-named vertex and allowed to pass only through larger names.
    let mut anchors: Vec<u32> = g.vertex_ids().collect();
    anchors.sort_by_key(|&v| g.vertex_name(v).to_owned());
    let mut cycles = Vec::new();
    for &anchor in &anchors {
        let mut stack = Vec::new();
        let mut on_path = VertexSet::new();
        on_path.insert(anchor);
        dfs_cycles(g, anchor, anchor, &mut stack, &mut on_path, &mut cycles);
    }
    cycles.sort_by_cached_key(|c| (c.len(), c.edge_names(g)));
    cycles
}

fn dfs_cycles(
    g: &Graph,
    anchor: u32,
    current: u32,
    stack: &mut Vec<u32>,
    on_path: &mut VertexSet,
    cycles: &mut Vec<Cycle>,
) {
    for &e in g.out_edges(current) {
        let w = g.edge(e).range;
        if w == anchor {
            stack.push(e);
            cycles.push(Cycle {
                edges: stack.clone(),
            });
            stack.pop();
        } else if !on_path.contains(w) && g.vertex_name(w) > g.vertex_name(anchor) {
            stack.push(e);
            on_path.insert(w);
            dfs_cycles(g, anchor, w, stack, on_path, cycles);
            on_path.remove(w);
            stack.pop();
        }
    }
}

/// All edges `e` with `s(e) = s(e_i)` for some cycle edge `e_i` and
/// `e != e_i`, sorted by edge name.
pub fn exits_of(g: &Graph, c: &Cycle) -> Vec<u32> {
    let cycle_edges: Vec<u32> = c.edge_indices().to_vec();
    let mut exits: Vec<u32> = c
        .edge_indices()
        .iter()
        .flat_map(|&ce| g.out_edges(g.edge(ce).source))
        .copied()
        .filter(|e| !cycle_edges.contains(e))
        .collect();
    exits.sort_by_key(|&e| g.edge(e).name.clone());
    exits.dedup();
    exits
}

/// Condition (L): every cycle has an exit.
pub fn condition_l(g: &Graph) -> bool {
    enumerate_cycles(g).iter().all(|c| !exits_of(g, c).is_empty())
}

/// `P_c(E)`: the vertices lying on cycles without exits.
pub fn pc_set(g: &Graph) -> VertexSet {
    enumerate_cycles(g)
        .iter()
        .filter(|c| exits_of(g, c).is_empty())
        .flat_map(|c| c.vertex_set(g).iter().collect::<Vec<_>>())
        .collect()
}

/// A comet has exactly one cycle and every vertex reaches it. (On a finite
/// graph this forces every infinite path into the cycle: a departure that
/// returned would create a second cycle.)
pub fn is_comet(g: &Graph) -> bool {
    let cycles = enumerate_cycles(g);
    if cycles.len() != 1 {
        return false;
    }
    let c0 = cycles[0].vertex_set(g);
    g.vertex_ids()
        .all(|v| !g.reachable_from(v).intersection(&c0).is_empty())
}

/// Matrix size of the identification `M_n(K[x,x^-1])`, or infinite when the
/// relevant path count diverges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixSize {
    Finite(usize),
    Infinite,
}

impl Serialize for MatrixSize {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MatrixSize::Finite(n) => ser.serialize_u64(*n as u64),
            MatrixSize::Infinite => ser.serialize_str("infinite"),
        }
    }
}

impl std::fmt::Display for MatrixSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixSize::Finite(n) => write!(f, "{n}"),
            MatrixSize::Infinite => write!(f, "infinite"),
        }
    }
}

/// For a graph whose cycle `mu` has no exits: the number of paths ending at a
/// fixed cycle vertex that do not traverse `mu` in full, or infinite when a
/// second cycle feeds the count.
///
/// Since `mu` has no exits, each such path is either an arc of `mu` (one per
/// length `0..n`), or an entering path that first meets `mu^0` at its range,
/// extended by a forced arc. The choice of base vertex drops out.
pub fn mu_matrix_size(g: &Graph, mu: &Cycle) -> Result<MatrixSize> {
    if !exits_of(g, mu).is_empty() {
        return Err(Error::Precondition(format!(
            "cycle {} has exits",
            mu.display(g)
        )));
    }
    let mu0 = mu.vertex_set(g);
    for c in enumerate_cycles(g) {
        if &c != mu
            && c.vertex_set(g)
                .iter()
                .any(|v| !g.reachable_from(v).intersection(&mu0).is_empty())
        {
            return Ok(MatrixSize::Infinite);
        }
    }
    // Vertices outside mu^0 that reach it; by the check above the subgraph on
    // them is acyclic, so path counts are a finite DP.
    let feeding: VertexSet = g
        .vertex_ids()
        .filter(|&v| !mu0.contains(v) && !g.reachable_from(v).intersection(&mu0).is_empty())
        .collect();
    let mut memo: HashMap<u32, usize> = HashMap::new();
    let entering: usize = g
        .edges()
        .iter()
        .filter(|e| feeding.contains(e.source) && mu0.contains(e.range))
        .map(|e| paths_ending_at(g, e.source, &feeding, &mut memo))
        .sum();
    Ok(MatrixSize::Finite(mu.len() + entering))
}

fn paths_ending_at(g: &Graph, v: u32, feeding: &VertexSet, memo: &mut HashMap<u32, usize>) -> usize {
    if let Some(&n) = memo.get(&v) {
        return n;
    }
    let n = 1 + g
        .in_edges(v)
        .iter()
        .filter(|&&e| feeding.contains(g.edge(e).source))
        .map(|&e| paths_ending_at(g, g.edge(e).source, feeding, memo))
        .sum::<usize>();
    memo.insert(v, n);
    n
}

/// Matrix size `n` with `L(E) = M_n(K[x,x^-1])` for a comet.
pub fn comet_matrix_size(g: &Graph) -> Result<usize> {
    if !is_comet(g) {
        return Err(Error::NotComet);
    }
    let mu = enumerate_cycles(g).pop().unwrap();
    match mu_matrix_size(g, &mu)? {
        MatrixSize::Finite(n) => Ok(n),
        MatrixSize::Infinite => unreachable!("a comet has a single cycle"),
    }
}
