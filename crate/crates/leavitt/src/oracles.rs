//! Independent brute-force reference implementations used by the test suite,
//! plus seeded random graph generation and the small named fixture graphs.
//!
//! Nothing here shares algorithms with the main modules; everything is
//! recomputed from first definitions on top of the plain graph types.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Deterministic random multigraph generation.
#[derive(Debug, Clone)]
pub struct RandomGraphSpec {
    pub vertices: RangeInclusive<usize>,
    pub edges: RangeInclusive<usize>,
    pub seed: u64,
}

pub fn random_graph(spec: &RandomGraphSpec) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = rng.gen_range(spec.vertices.clone());
    let m = if n == 0 {
        0
    } else {
        rng.gen_range(spec.edges.clone())
    };
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..m)
        .map(|j| {
            let s = rng.gen_range(0..n);
            let r = rng.gen_range(0..n);
            (format!("e{j}"), format!("v{s}"), format!("v{r}"))
        })
        .collect();
    Graph::new(vertices, edges).expect("generated graph is valid")
}

const ORACLE_VERTEX_BOUND: usize = 12;

/// Brute-force reachability: repeatedly extend one-step reachability until
/// nothing new appears, written locally so the oracles stay independent of
/// the library's search code.
fn brute_reach_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut reach = vec![vec![false; n]; n];
    for (v, row) in reach.iter_mut().enumerate() {
        row[v] = true; // length-0 path
    }
    loop {
        let mut changed = false;
        for e in g.edges() {
            for row in reach.iter_mut() {
                if row[e.source as usize] && !row[e.range as usize] {
                    row[e.range as usize] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return reach;
        }
    }
}

fn brute_hereditary(g: &Graph, reach: &[Vec<bool>], h: &VertexSet) -> bool {
    h.iter().all(|v| {
        g.vertex_ids()
            .all(|w| !reach[v as usize][w as usize] || h.contains(w))
    })
}

fn brute_saturated(g: &Graph, h: &VertexSet) -> bool {
    g.vertex_ids().all(|v| {
        let outgoing: Vec<u32> = g
            .edges()
            .iter()
            .filter(|e| e.source == v)
            .map(|e| e.range)
            .collect();
        outgoing.is_empty() || !outgoing.iter().all(|&r| h.contains(r)) || h.contains(v)
    })
}

/// The minimum-by-inclusion hereditary saturated superset of `X`, found by
/// exhaustive subset scan. The minimum exists and is unique: `E^0` always
/// qualifies and qualifying sets are closed under intersection.
pub fn brute_closure(g: &Graph, x: &VertexSet) -> Result<VertexSet> {
    let n = g.vertex_count();
    if n > ORACLE_VERTEX_BOUND {
        return Err(Error::OracleBound(format!("{n} vertices")));
    }
    let reach = brute_reach_matrix(g);
    let qualifying: Vec<VertexSet> = (0u64..1 << n)
        .map(|mask| VertexSet::from_mask(mask, n))
        .filter(|h| x.is_subset(h) && brute_hereditary(g, &reach, h) && brute_saturated(g, h))
        .collect();
    let best = qualifying
        .iter()
        .min_by_key(|h| h.len())
        .expect("full vertex set is hereditary saturated")
        .clone();
    debug_assert!(qualifying.iter().all(|h| best.is_subset(h)));
    Ok(best)
}

/// All nonempty subsets passing MT1, MT2 and MT3, checked directly from the
/// definitions, in ascending mask order.
pub fn brute_tails(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    if n > ORACLE_VERTEX_BOUND {
        return Err(Error::OracleBound(format!("{n} vertices")));
    }
    let reach = brute_reach_matrix(g);
    let mut tails = Vec::new();
    for mask in 1u64..1 << n {
        let m = VertexSet::from_mask(mask, n);
        let mt1 = g.vertex_ids().all(|v| {
            m.contains(v) || m.iter().all(|w| !reach[v as usize][w as usize])
        });
        let mt2 = m.iter().all(|v| {
            let out: Vec<u32> = g
                .edges()
                .iter()
                .filter(|e| e.source == v)
                .map(|e| e.range)
                .collect();
            out.is_empty() || out.iter().any(|&r| m.contains(r))
        });
        let mt3 = m.iter().all(|v| {
            m.iter().all(|w| {
                m.iter()
                    .any(|y| reach[v as usize][y as usize] && reach[w as usize][y as usize])
            })
        });
        if mt1 && mt2 && mt3 {
            tails.push(m);
        }
    }
    Ok(tails)
}

/// All cycles by exhaustive closed-path search: every edge sequence up to
/// length `|E^0|`, filtered by closure and the distinct-sources invariant,
/// rotated to the smallest source name, deduplicated.
pub fn brute_cycles(g: &Graph) -> Result<Vec<Vec<u32>>> {
    if g.edge_count() > ORACLE_VERTEX_BOUND {
        return Err(Error::OracleBound(format!("{} edges", g.edge_count())));
    }
    let max_len = g.vertex_count();
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut seq: Vec<u32> = Vec::new();
    extend_sequences(g, &mut seq, max_len, &mut found);
    Ok(found.into_iter().collect())
}

fn extend_sequences(g: &Graph, seq: &mut Vec<u32>, max_len: usize, found: &mut BTreeSet<Vec<u32>>) {
    if let (Some(&first), Some(&last)) = (seq.first(), seq.last()) {
        if g.edge(last).range == g.edge(first).source {
            let mut sources: Vec<u32> = seq.iter().map(|&e| g.edge(e).source).collect();
            sources.sort_unstable();
            sources.dedup();
            if sources.len() == seq.len() {
                found.insert(rotate_to_smallest(g, seq));
            }
        }
    }
    if seq.len() == max_len {
        return;
    }
    for e in 0..g.edge_count() as u32 {
        if seq
            .last()
            .is_none_or(|&last| g.edge(last).range == g.edge(e).source)
        {
            seq.push(e);
            extend_sequences(g, seq, max_len, found);
            seq.pop();
        }
    }
}

fn rotate_to_smallest(g: &Graph, seq: &[u32]) -> Vec<u32> {
    let start = (0..seq.len())
        .min_by_key(|&i| g.vertex_name(g.edge(seq[i]).source))
        .unwrap();
    seq[start..].iter().chain(&seq[..start]).copied().collect()
}

/// Counts paths ending at `target` that avoid every rotation of `mu` as a
/// contiguous subsequence, by exhaustive edge-sequence enumeration up to
/// `max_len`. Includes the length-0 path.
pub fn brute_mu_free_paths(g: &Graph, mu: &[u32], target: u32, max_len: usize) -> usize {
    let rotations: Vec<Vec<u32>> = (0..mu.len())
        .map(|i| mu[i..].iter().chain(&mu[..i]).copied().collect())
        .collect();
    let mut count = 1; // the vertex itself
    let mut seq: Vec<u32> = Vec::new();
    count_paths(g, &mut seq, target, max_len, &rotations, &mut count);
    count
}

fn count_paths(
    g: &Graph,
    seq: &mut Vec<u32>,
    target: u32,
    max_len: usize,
    rotations: &[Vec<u32>],
    count: &mut usize,
) {
    if seq.len() == max_len {
        return;
    }
    let next_target = match seq.first() {
        Some(&first) => g.edge(first).source,
        None => target,
    };
    for e in 0..g.edge_count() as u32 {
        if g.edge(e).range != next_target {
            continue;
        }
        seq.insert(0, e);
        let contains_mu = rotations
            .iter()
            .any(|rot| seq.windows(rot.len()).any(|w| w == rot.as_slice()));
        if !contains_mu {
            *count += 1;
            count_paths(g, seq, target, max_len, rotations, count);
        }
        seq.remove(0);
    }
}

/// The small named graphs used across the test suite and the documentation.
pub mod fixtures {
    use crate::graph::Graph;

    /// One vertex with a single loop; `L(E)` is the Laurent ring.
    pub fn loop_graph() -> Graph {
        Graph::parse("vertex v\nedge e v v").unwrap()
    }

    /// One loop with one exit to a sink; `L(E)` is the Toeplitz algebra.
    pub fn toeplitz() -> Graph {
        Graph::parse("vertex v\nvertex w\nedge e v v\nedge f v w").unwrap()
    }

    /// Line with three vertices; `L(E)` is `M_3(K)`.
    pub fn line3() -> Graph {
        Graph::parse("vertex u1\nvertex u2\nvertex u3\nedge e1 u1 u2\nedge e2 u2 u3").unwrap()
    }

    /// Rose with two petals; `L(E)` is the Leavitt algebra `L(1,2)`.
    pub fn rose2() -> Graph {
        Graph::parse("vertex v\nedge e1 v v\nedge e2 v v").unwrap()
    }

    /// Two disjoint loops.
    pub fn two_loops() -> Graph {
        Graph::parse("vertex v\nvertex w\nedge e v v\nedge f w w").unwrap()
    }

    /// A loop at `v` fed by `w`; a comet with matrix size 2.
    pub fn comet2() -> Graph {
        Graph::parse("vertex v\nvertex w\nedge e v v\nedge f w v").unwrap()
    }

    /// Pure 3-cycle.
    pub fn cycle3() -> Graph {
        Graph::parse(
            "vertex v1\nvertex v2\nvertex v3\nedge a v1 v2\nedge b v2 v3\nedge c v3 v1",
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        VertexSet::from_names(g, names.iter().copied()).unwrap()
    }

    #[test]
    fn brute_closure_examples() {
        let l3 = line3();
        assert_eq!(
            brute_closure(&l3, &set(&l3, &["u3"])).unwrap(),
            l3.full_set()
        );
        let t = toeplitz();
        assert_eq!(brute_closure(&t, &set(&t, &["w"])).unwrap(), set(&t, &["w"]));
        assert_eq!(brute_closure(&t, &t.full_set()).unwrap(), t.full_set());
    }

    #[test]
    fn brute_tails_examples() {
        let t = toeplitz();
        assert_eq!(
            brute_tails(&t).unwrap(),
            vec![set(&t, &["v"]), t.full_set()]
        );
        let l = loop_graph();
        assert_eq!(brute_tails(&l).unwrap(), vec![l.full_set()]);
        let tl = two_loops();
        assert_eq!(
            brute_tails(&tl).unwrap(),
            vec![set(&tl, &["v"]), set(&tl, &["w"])]
        );
    }

    #[test]
    fn brute_cycles_examples() {
        let r2 = rose2();
        assert_eq!(brute_cycles(&r2).unwrap(), vec![vec![0], vec![1]]);
        assert!(brute_cycles(&line3()).unwrap().is_empty());
        assert_eq!(brute_cycles(&loop_graph()).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn brute_path_counts() {
        let l = loop_graph();
        assert_eq!(brute_mu_free_paths(&l, &[0], 0, 8), 1);
        let c2 = comet2();
        let mu = [0u32];
        assert_eq!(brute_mu_free_paths(&c2, &mu, c2.vertex("v").unwrap(), 8), 2);
    }

    #[test]
    fn random_graphs_are_deterministic() {
        let spec = RandomGraphSpec {
            vertices: 1..=8,
            edges: 0..=12,
            seed: 42,
        };
        assert_eq!(random_graph(&spec), random_graph(&spec));
    }
}
