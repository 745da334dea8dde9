//! Derived graphs: the quotient `E/H`, the restriction `E_H`, the extended
//! graph with ghost edges, and the `_H E` construction on entering paths.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::graph::{Graph, VertexSet};
use crate::hsat::{closure, is_hereditary};
use crate::{Error, Result};

/// Which construction produced a [`DerivedGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Quotient { removed: Vec<String> },
    Restriction { kept: Vec<String> },
    Extended,
    Hedge { h: Vec<String>, max_path_length: usize },
}

impl Provenance {
    pub fn describe(&self) -> String {
        match self {
            Provenance::Quotient { removed } => format!("quotient by H={{{}}}", removed.join(",")),
            Provenance::Restriction { kept } => format!("restriction to H={{{}}}", kept.join(",")),
            Provenance::Extended => "extended graph with ghost edges".into(),
            Provenance::Hedge { h, max_path_length } => format!(
                "entering-path graph over H={{{}}} (path bound {max_path_length})",
                h.join(",")
            ),
        }
    }
}

/// A graph produced by one of the constructions, with provenance and a map
/// from derived names back to the originating objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedGraph {
    pub graph: Graph,
    pub provenance: Provenance,
    pub name_map: BTreeMap<String, String>,
}

impl DerivedGraph {
    /// Text-format serialization with a provenance comment header.
    pub fn serialize(&self) -> String {
        format!("# {}\n{}", self.provenance.describe(), self.graph.serialize())
    }
}

/// The quotient `E/H`: drop `H` and every edge ranging in `H`. Requires `H`
/// hereditary, which guarantees the retained edges have sources outside `H`.
pub fn quotient_graph(g: &Graph, h: &VertexSet) -> Result<DerivedGraph> {
    if !is_hereditary(g, h) {
        return Err(Error::NotHereditary(h.display(g)));
    }
    let vertices: Vec<String> = g
        .vertex_ids()
        .filter(|v| !h.contains(*v))
        .map(|v| g.vertex_name(v).to_owned())
        .collect();
    let edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .filter(|e| !h.contains(e.range))
        .map(|e| {
            (
                e.name.clone(),
                g.vertex_name(e.source).to_owned(),
                g.vertex_name(e.range).to_owned(),
            )
        })
        .collect();
    Ok(DerivedGraph {
        graph: Graph::new(vertices, edges)?,
        provenance: Provenance::Quotient {
            removed: h.names(g),
        },
        name_map: BTreeMap::new(),
    })
}

/// The restriction `E_H`: keep `H` and every edge sourced in `H`. Requires
/// `H` hereditary so that ranges stay in `H`.
pub fn restriction_graph(g: &Graph, h: &VertexSet) -> Result<DerivedGraph> {
    if !is_hereditary(g, h) {
        return Err(Error::NotHereditary(h.display(g)));
    }
    let vertices: Vec<String> = g
        .vertex_ids()
        .filter(|v| h.contains(*v))
        .map(|v| g.vertex_name(v).to_owned())
        .collect();
    let edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .filter(|e| h.contains(e.source))
        .map(|e| {
            (
                e.name.clone(),
                g.vertex_name(e.source).to_owned(),
                g.vertex_name(e.range).to_owned(),
            )
        })
        .collect();
    Ok(DerivedGraph {
        graph: Graph::new(vertices, edges)?,
        provenance: Provenance::Restriction { kept: h.names(g) },
        name_map: BTreeMap::new(),
    })
}

/// The extended graph: same vertices, plus a ghost edge `e*` running
/// opposite to each real edge `e`.
pub fn extended_graph(g: &Graph) -> Result<DerivedGraph> {
    let vertices: Vec<String> = g.vertex_names().to_vec();
    let mut edges: Vec<(String, String, String)> = Vec::with_capacity(2 * g.edge_count());
    let mut name_map = BTreeMap::new();
    for e in g.edges() {
        edges.push((
            e.name.clone(),
            g.vertex_name(e.source).to_owned(),
            g.vertex_name(e.range).to_owned(),
        ));
    }
    for e in g.edges() {
        let ghost = format!("{}*", e.name);
        name_map.insert(ghost.clone(), format!("ghost of {}", e.name));
        edges.push((
            ghost,
            g.vertex_name(e.range).to_owned(),
            g.vertex_name(e.source).to_owned(),
        ));
    }
    Ok(DerivedGraph {
        graph: Graph::new(vertices, edges)?,
        provenance: Provenance::Extended,
        name_map,
    })
}

/// Result of materializing `_H E`: the graph plus a flag telling whether the
/// entering-path family `F_E(H)` was finite. When `finite` is false the
/// family was truncated at the requested path length.
#[derive(Debug, Clone)]
pub struct HedgeGraph {
    pub derived: DerivedGraph,
    pub finite: bool,
}

/// The `_H E` construction: vertices `H` plus the entering paths `F_E(H)`
/// (paths from outside `H` whose final range first lands in `H`), edges of
/// `E` sourced in `H` plus one bar edge from each entering path to its range.
///
/// `F_E(H)` is infinite exactly when a vertex on a cycle outside `H` reaches
/// `H`; in that case the materialization stops at `max_path_length` and the
/// flag reports it.
pub fn hedge_graph(g: &Graph, h: &VertexSet, max_path_length: usize) -> Result<HedgeGraph> {
    if h.is_empty() {
        return Err(Error::EmptySet);
    }
    if !is_hereditary(g, h) || &closure(g, h) != h {
        return Err(Error::NotHereditarySaturated(h.display(g)));
    }
    let finite = !cycle_outside_reaches(g, h);

    // Entering paths by BFS on path length; each is named by concatenating
    // its edge names, deduplicated if concatenations collide.
    let mut used: HashSet<String> = h.names(g).into_iter().collect();
    let mut vertices: Vec<String> = h.names(g);
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .filter(|e| h.contains(e.source))
        .map(|e| {
            (
                e.name.clone(),
                g.vertex_name(e.source).to_owned(),
                g.vertex_name(e.range).to_owned(),
            )
        })
        .collect();
    let mut name_map = BTreeMap::new();

    let mut queue: VecDeque<(Vec<u32>, u32)> = VecDeque::new(); // (edge seq, range)
    for (i, e) in g.edges().iter().enumerate() {
        if !h.contains(e.source) {
            queue.push_back((vec![i as u32], e.range));
        }
    }
    while let Some((path, range)) = queue.pop_front() {
        if path.len() > max_path_length {
            continue;
        }
        if h.contains(range) {
            // A member of F_E(H): all earlier ranges were outside H.
            let concat: String = path.iter().map(|&e| g.edge(e).name.as_str()).collect();
            let name = unique_name(concat, &mut used);
            let display: Vec<&str> = path.iter().map(|&e| g.edge(e).name.as_str()).collect();
            name_map.insert(name.clone(), format!("path {}", display.join(" ")));
            let bar = unique_name(format!("~{name}"), &mut used);
            edges.push((bar, name.clone(), g.vertex_name(range).to_owned()));
            vertices.push(name);
        } else {
            for &e in g.out_edges(range) {
                let mut longer = path.clone();
                longer.push(e);
                queue.push_back((longer, g.edge(e).range));
            }
        }
    }

    // Bar edge names may contain `~`, which the parse grammar does not
    // accept; construct the graph directly.
    let graph = build_unchecked(vertices, edges)?;
    Ok(HedgeGraph {
        derived: DerivedGraph {
            graph,
            provenance: Provenance::Hedge {
                h: h.names(g),
                max_path_length,
            },
            name_map,
        },
        finite,
    })
}

fn unique_name(base: String, used: &mut HashSet<String>) -> String {
    if used.insert(base.clone()) {
        return base;
    }
    for i in 2.. {
        let candidate = format!("{base}_{i}");
        if used.insert(candidate.clone()) {
            return candidate;
        }
    }
    unreachable!()
}

fn build_unchecked(
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
) -> Result<Graph> {
    Graph::new(vertices, edges)
}

/// True iff some vertex lying on a cycle disjoint from `H` reaches `H`.
pub fn cycle_outside_reaches(g: &Graph, h: &VertexSet) -> bool {
    crate::cycles::enumerate_cycles(g).iter().any(|c| {
        let c0 = c.vertex_set(g);
        c0.intersection(h).is_empty()
            && c0
                .iter()
                .any(|v| !g.reachable_from(v).intersection(h).is_empty())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::fixtures::*;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        VertexSet::from_names(g, names.iter().copied()).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let t = toeplitz();
        let q = quotient_graph(&t, &set(&t, &["w"])).unwrap();
        assert_eq!(q.graph, loop_graph());

        let q = quotient_graph(&t, &VertexSet::new()).unwrap();
        assert_eq!(q.graph, t);

        let l3 = line3();
        let q = quotient_graph(&l3, &l3.full_set()).unwrap();
        assert_eq!(q.graph.vertex_count(), 0);

        assert!(quotient_graph(&t, &set(&t, &["v"])).is_err());
    }

    #[test]
    fn restriction_examples() {
        let t = toeplitz();
        let r = restriction_graph(&t, &set(&t, &["w"])).unwrap();
        assert_eq!(r.graph.vertex_count(), 1);
        assert_eq!(r.graph.edge_count(), 0);

        let r = restriction_graph(&t, &t.full_set()).unwrap();
        assert_eq!(r.graph, t);

        let tl = two_loops();
        let r = restriction_graph(&tl, &set(&tl, &["v"])).unwrap();
        assert_eq!(r.graph.vertex_count(), 1);
        assert_eq!(r.graph.edge_count(), 1);
    }

    #[test]
    fn extended_examples() {
        let l = loop_graph();
        let ext = extended_graph(&l).unwrap();
        assert_eq!(ext.graph.vertex_count(), 1);
        assert_eq!(ext.graph.edge_count(), 2);

        let l3 = line3();
        let ext = extended_graph(&l3).unwrap();
        assert_eq!(ext.graph.vertex_count(), 3);
        assert_eq!(ext.graph.edge_count(), 4);

        let empty = Graph::new(Vec::<String>::new(), vec![]).unwrap();
        let ext = extended_graph(&empty).unwrap();
        assert_eq!(ext.graph.vertex_count(), 0);
        assert_eq!(ext.graph.edge_count(), 0);
    }

    #[test]
    fn extended_doubles_edges() {
        for seed in 0..20 {
            let g = crate::oracles::random_graph(&crate::oracles::RandomGraphSpec {
                vertices: 1..=6,
                edges: 0..=10,
                seed,
            });
            let ext = extended_graph(&g).unwrap();
            assert_eq!(ext.graph.edge_count(), 2 * g.edge_count());
        }
    }

    #[test]
    fn hedge_degenerate_full_h() {
        let l3 = line3();
        let hg = hedge_graph(&l3, &l3.full_set(), 10).unwrap();
        assert!(hg.finite);
        assert_eq!(hg.derived.graph, l3);
    }

    #[test]
    fn hedge_rejects_non_saturated() {
        let l3 = line3();
        assert!(matches!(
            hedge_graph(&l3, &set(&l3, &["u3"]), 10),
            Err(Error::NotHereditarySaturated(_))
        ));
        assert!(matches!(
            hedge_graph(&l3, &VertexSet::new(), 10),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn hedge_toeplitz_truncates() {
        let t = toeplitz();
        let hg = hedge_graph(&t, &set(&t, &["w"]), 3).unwrap();
        assert!(!hg.finite);
        // F ⊇ {f, ef, eef} at bound 3; vertices are H plus those paths.
        let mut names = hg.derived.graph.vertex_names().to_vec();
        names.sort();
        assert_eq!(names, ["eef", "ef", "f", "w"]);
        assert_eq!(hg.derived.graph.edge_count(), 3); // one bar edge per path
    }
}
