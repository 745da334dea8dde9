//! Library-versus-oracle equivalence on seeded random corpora, plus
//! property-based invariants.

use proptest::prelude::*;

use leavitt::constructions::hedge_graph;
use leavitt::cycles::enumerate_cycles;
use leavitt::graph::{Graph, VertexSet};
use leavitt::hsat::{closure, enumerate_hsat};
use leavitt::laurent::{parse_poly, FieldSpec, Poly};
use leavitt::oracles::{brute_cycles, brute_tails, random_graph, RandomGraphSpec};
use leavitt::tails::enumerate_maximal_tails;

fn seeded(seed: u64, vertices: std::ops::RangeInclusive<usize>, edges: std::ops::RangeInclusive<usize>) -> Graph {
    random_graph(&RandomGraphSpec {
        vertices,
        edges,
        seed,
    })
}

#[test]
fn tails_match_brute_force() {
    for seed in 0..100 {
        let g = seeded(seed, 1..=8, 0..=12);
        let mut tails: Vec<VertexSet> = enumerate_maximal_tails(&g)
            .unwrap()
            .into_iter()
            .map(|t| t.members)
            .collect();
        tails.sort();
        let mut brute = brute_tails(&g).unwrap();
        brute.sort();
        assert_eq!(tails, brute, "seed {seed} graph:\n{}", g.serialize());
    }
}

#[test]
fn cycles_match_brute_force() {
    for seed in 0..100 {
        let g = seeded(seed, 1..=6, 0..=8);
        let mut cycles: Vec<Vec<u32>> = enumerate_cycles(&g)
            .iter()
            .map(|c| c.edge_indices().to_vec())
            .collect();
        cycles.sort();
        let mut brute = brute_cycles(&g).unwrap();
        brute.sort();
        assert_eq!(cycles, brute, "seed {seed} graph:\n{}", g.serialize());
    }
}

/// Finiteness of the hedge graph, recomputed in-test from the oracle cycle
/// list: infinite iff some cycle disjoint from `H` has a vertex reaching `H`.
fn brute_hedge_infinite(g: &Graph, h: &VertexSet) -> bool {
    brute_cycles(g).unwrap().iter().any(|cycle| {
        cycle.iter().all(|&e| !h.contains(g.edge(e).source))
            && cycle
                .iter()
                .any(|&e| !g.reachable_from(g.edge(e).source).intersection(h).is_empty())
    })
}

#[test]
fn hedge_finiteness_matches_oracle() {
    for seed in 0..80 {
        let g = seeded(seed, 2..=6, 0..=8);
        let n = g.vertex_count();
        for h in enumerate_hsat(&g).unwrap() {
            if h.is_empty() {
                continue;
            }
            let hedge = hedge_graph(&g, &h, 6).unwrap();
            assert_eq!(
                hedge.finite,
                !brute_hedge_infinite(&g, &h),
                "seed {seed} H={}",
                h.display(&g)
            );
            if hedge.finite {
                // finite hedges stabilize once the bound passes the longest
                // acyclic entering path
                let a = hedge_graph(&g, &h, n).unwrap();
                let b = hedge_graph(&g, &h, 2 * n + 2).unwrap();
                assert_eq!(a.derived.graph.vertex_count(), b.derived.graph.vertex_count());
            }
        }
    }
}

proptest! {
    #[test]
    fn closure_idempotent_and_monotone(seed in 0u64..10_000, xmask in any::<u64>(), ymask in any::<u64>()) {
        let g = seeded(seed, 1..=8, 0..=12);
        let n = g.vertex_count();
        let x = VertexSet::from_mask(xmask & ((1 << n) - 1), n);
        let y = VertexSet::from_mask(ymask & ((1 << n) - 1), n);
        let cx = closure(&g, &x);
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(closure(&g, &cx), cx.clone());
        let cxy = closure(&g, &x.union(&y));
        prop_assert!(cx.is_subset(&cxy));
    }

    #[test]
    fn closure_lands_in_lattice(seed in 0u64..10_000, xmask in any::<u64>()) {
        let g = seeded(seed, 1..=8, 0..=10);
        let n = g.vertex_count();
        let x = VertexSet::from_mask(xmask & ((1 << n) - 1), n);
        let lattice = enumerate_hsat(&g).unwrap();
        prop_assert!(lattice.contains(&closure(&g, &x)));
    }

    #[test]
    fn parse_serialize_round_trip(seed in 0u64..10_000) {
        let g = seeded(seed, 1..=8, 0..=12);
        prop_assert_eq!(Graph::parse(&g.serialize()).unwrap(), g);
    }

    #[test]
    fn poly_display_parse_round_trip_gf5(coeffs in proptest::collection::vec(0i64..5, 1..6)) {
        let field = FieldSpec::PrimeField(5);
        let p = Poly::from_ints(&field, &coeffs);
        if !p.is_zero() {
            prop_assert_eq!(parse_poly(&p.to_string(), &field).unwrap(), p);
        }
    }

    #[test]
    fn poly_display_parse_round_trip_q(coeffs in proptest::collection::vec(-9i64..10, 1..6)) {
        let field = FieldSpec::Rationals;
        let p = Poly::from_ints(&field, &coeffs);
        if !p.is_zero() {
            prop_assert_eq!(parse_poly(&p.to_string(), &field).unwrap(), p);
        }
    }
}
