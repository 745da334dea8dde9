//! Hereditary and saturated predicates, `Omega(X)`, the hereditary saturated
//! closure, and enumeration of the lattice `H_E`.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Brute-force subset enumeration is used up to this many vertices; above it
/// the lattice is generated from closures of singletons instead.
pub const BRUTE_FORCE_THRESHOLD: usize = 20;

/// True iff `v >= w` and `v in H` imply `w in H`.
pub fn is_hereditary(g: &Graph, h: &VertexSet) -> bool {
    h.iter().all(|v| g.reachable_from(v).is_subset(h))
}

/// True iff every non-sink `v` with `r(s^{-1}(v))` contained in `H` already
/// lies in `H`.
pub fn is_saturated(g: &Graph, h: &VertexSet) -> bool {
    g.vertex_ids().all(|v| {
        h.contains(v)
            || g.is_sink(v)
            || g.out_edges(v)
                .iter()
                .any(|&e| !h.contains(g.edge(e).range))
    })
}

/// `Omega(X)`: vertices outside `X` that reach no vertex of `X`.
pub fn omega(g: &Graph, x: &VertexSet) -> VertexSet {
    g.vertex_ids()
        .filter(|&w| !x.contains(w) && g.reachable_from(w).intersection(x).is_empty())
        .collect()
}

/// The hereditary saturated closure computed by the fixpoint
/// `Lambda_0 = T(X)`, `Lambda_n = Lambda_{n-1} + {y | r(s^{-1}(y)) in Lambda_{n-1}}`.
///
/// Returns every stage, last one being the closure itself; the iteration
/// stabilizes in at most `|E^0|` steps.
pub fn closure_stages(g: &Graph, x: &VertexSet) -> Vec<VertexSet> {
    let mut stages = vec![g.tree(x)];
    loop {
        let prev = stages.last().unwrap();
        let mut next = prev.clone();
        for y in g.vertex_ids() {
            if !next.contains(y)
                && !g.is_sink(y)
                && g.out_edges(y).iter().all(|&e| prev.contains(g.edge(e).range))
            {
                next.insert(y);
            }
        }
        if &next == prev {
            return stages;
        }
        stages.push(next);
    }
}

/// The smallest hereditary saturated superset of `X`.
pub fn closure(g: &Graph, x: &VertexSet) -> VertexSet {
    closure_stages(g, x).pop().unwrap()
}

/// How [`enumerate_hsat_with`] is allowed to proceed on large graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsatStrategy {
    /// Brute force up to the threshold, generated lattice above it.
    Auto,
    /// Brute force only; errors above the threshold.
    BruteForceOnly,
}

/// All hereditary saturated subsets, sorted by `(size, lexicographic member
/// names)`. Always contains the empty set and `E^0`.
pub fn enumerate_hsat(g: &Graph) -> Result<Vec<VertexSet>> {
    enumerate_hsat_with(g, HsatStrategy::Auto)
}

pub fn enumerate_hsat_with(g: &Graph, strategy: HsatStrategy) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    let mut sets = if n <= BRUTE_FORCE_THRESHOLD {
        brute_force_lattice(g)
    } else if strategy == HsatStrategy::Auto {
        generated_lattice(g)
    } else {
        return Err(Error::HsatThreshold(n));
    };
    sets.sort_by_cached_key(|h| h.order_key(g));
    Ok(sets)
}

fn brute_force_lattice(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    // Reachability and out-neighbour masks, so each subset check is bit math.
    let reach: Vec<u64> = g
        .vertex_ids()
        .map(|v| mask_of(&g.reachable_from(v)))
        .collect();
    let out_ranges: Vec<u64> = g
        .vertex_ids()
        .map(|v| {
            g.out_edges(v)
                .iter()
                .map(|&e| 1u64 << g.edge(e).range)
                .fold(0, |a, b| a | b)
        })
        .collect();
    let mut sets = Vec::new();
    'subset: for mask in 0u64..1 << n {
        for v in 0..n {
            let bit = mask >> v & 1 == 1;
            if bit && reach[v] & !mask != 0 {
                continue 'subset; // not hereditary
            }
            if !bit && !g.is_sink(v as u32) && out_ranges[v] & !mask == 0 {
                continue 'subset; // not saturated
            }
        }
        sets.push(VertexSet::from_mask(mask, n));
    }
    sets
}

fn mask_of(set: &VertexSet) -> u64 {
    set.iter().map(|v| 1u64 << v).fold(0, |a, b| a | b)
}

/// Lattice generation for large graphs: closures of singletons, closed under
/// `(A, B) -> closure(A union B)` to a fixpoint, plus the empty set.
fn generated_lattice(g: &Graph) -> Vec<VertexSet> {
    use std::collections::BTreeSet;
    let mut lattice: BTreeSet<VertexSet> = BTreeSet::new();
    lattice.insert(VertexSet::new());
    for v in g.vertex_ids() {
        let mut single = VertexSet::new();
        single.insert(v);
        lattice.insert(closure(g, &single));
    }
    loop {
        let current: Vec<VertexSet> = lattice.iter().cloned().collect();
        let before = lattice.len();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                lattice.insert(closure(g, &a.union(b)));
            }
        }
        if lattice.len() == before {
            return lattice.into_iter().collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::fixtures::*;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        VertexSet::from_names(g, names.iter().copied()).unwrap()
    }

    #[test]
    fn hereditary_examples() {
        let t = toeplitz();
        assert!(is_hereditary(&t, &set(&t, &["w"])));
        assert!(!is_hereditary(&t, &set(&t, &["v"])));
        assert!(is_hereditary(&t, &VertexSet::new()));
        assert!(is_hereditary(&t, &t.full_set()));
    }

    #[test]
    fn saturated_examples() {
        let t = toeplitz();
        assert!(is_saturated(&t, &set(&t, &["w"])));
        assert!(is_saturated(&t, &t.full_set()));
        let l3 = line3();
        assert!(!is_saturated(&l3, &set(&l3, &["u3"])));
    }

    #[test]
    fn omega_examples() {
        let t = toeplitz();
        assert_eq!(omega(&t, &set(&t, &["v"])), set(&t, &["w"]));
        assert!(omega(&t, &set(&t, &["w"])).is_empty());
        assert!(omega(&t, &t.full_set()).is_empty());
    }

    #[test]
    fn closure_examples() {
        let l3 = line3();
        assert_eq!(closure(&l3, &set(&l3, &["u3"])), l3.full_set());
        let stages = closure_stages(&l3, &set(&l3, &["u3"]));
        assert_eq!(
            stages,
            vec![
                set(&l3, &["u3"]),
                set(&l3, &["u2", "u3"]),
                set(&l3, &["u1", "u2", "u3"])
            ]
        );
        let t = toeplitz();
        assert_eq!(closure(&t, &set(&t, &["w"])), set(&t, &["w"]));
        assert!(closure(&t, &VertexSet::new()).is_empty());
    }

    #[test]
    fn enumerate_hsat_examples() {
        let t = toeplitz();
        let lattice = enumerate_hsat(&t).unwrap();
        assert_eq!(
            lattice,
            vec![VertexSet::new(), set(&t, &["w"]), set(&t, &["v", "w"])]
        );
        let r2 = rose2();
        assert_eq!(
            enumerate_hsat(&r2).unwrap(),
            vec![VertexSet::new(), r2.full_set()]
        );
        let tl = two_loops();
        assert_eq!(
            enumerate_hsat(&tl).unwrap(),
            vec![
                VertexSet::new(),
                set(&tl, &["v"]),
                set(&tl, &["w"]),
                tl.full_set()
            ]
        );
    }

    #[test]
    fn generated_lattice_matches_brute_force() {
        for seed in 0..20 {
            let g = crate::oracles::random_graph(&crate::oracles::RandomGraphSpec {
                vertices: 1..=7,
                edges: 0..=10,
                seed,
            });
            let mut generated = generated_lattice(&g);
            generated.sort_by_cached_key(|h| h.order_key(&g));
            assert_eq!(generated, enumerate_hsat(&g).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn threshold_error_when_generation_disabled() {
        let names: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
        let g = Graph::new(names, Vec::<(String, String, String)>::new()).unwrap();
        assert!(matches!(
            enumerate_hsat_with(&g, HsatStrategy::BruteForceOnly),
            Err(Error::HsatThreshold(21))
        ));
    }
}
