//! Maximal tails: the MT1-MT3 predicates, tail enumeration via the
//! hereditary-saturated complement bijection, and the gamma/tau partition.

use serde::Serialize;

use crate::cycles::{enumerate_cycles, exits_of, Cycle};
use crate::graph::{Graph, VertexSet};
use crate::hsat::enumerate_hsat;
use crate::{Error, Result};

/// Outcome of checking MT1-MT3 on a vertex subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MtReport {
    pub mt1: bool,
    pub mt2: bool,
    pub mt3: bool,
}

impl MtReport {
    pub fn is_maximal_tail(&self) -> bool {
        self.mt1 && self.mt2 && self.mt3
    }
}

/// Whether every cycle in the tail keeps an exit inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TailKind {
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "tau")]
    Tau,
}

/// A nonempty vertex set satisfying MT1-MT3, together with its kind and the
/// cycles inside it that have no exit inside it. A tau tail carries exactly
/// one such cycle up to rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalTail {
    pub members: VertexSet,
    pub kind: TailKind,
    pub no_exit_cycles: Vec<Cycle>,
}

/// Checks MT1, MT2 and MT3 directly from the definitions. `M` may be any
/// subset of `E^0`.
pub fn check_mt(g: &Graph, m: &VertexSet) -> MtReport {
    let mt1 = g
        .vertex_ids()
        .all(|v| m.contains(v) || g.reachable_from(v).intersection(m).is_empty());
    let mt2 = m.iter().all(|v| {
        g.is_sink(v) || g.out_edges(v).iter().any(|&e| m.contains(g.edge(e).range))
    });
    let mt3 = mt3_witness(g, m).is_none();
    MtReport { mt1, mt2, mt3 }
}

/// A pair `(v, w)` in `M` with no common reachable member of `M`, or `None`
/// when MT3 holds. Reachability is taken in the full graph; under MT1 any
/// witness path stays inside `M` anyway.
pub fn mt3_witness(g: &Graph, m: &VertexSet) -> Option<(u32, u32)> {
    let mut members: Vec<u32> = m.iter().collect();
    members.sort_by_key(|&v| g.vertex_name(v).to_owned());
    for (i, &v) in members.iter().enumerate() {
        let rv = g.reachable_from(v);
        for &w in &members[i..] {
            if g.reachable_from(w).intersection(&rv).intersection(m).is_empty() {
                return Some((v, w));
            }
        }
    }
    None
}

/// Cycles lying in `M` that have no exit with range in `M`.
pub fn no_exit_cycles_in(g: &Graph, m: &VertexSet) -> Vec<Cycle> {
    enumerate_cycles(g)
        .into_iter()
        .filter(|c| {
            c.vertex_set(g).is_subset(m)
                && !exits_of(g, c).iter().any(|&e| m.contains(g.edge(e).range))
        })
        .collect()
}

/// Kind of a maximal tail: tau iff it contains a cycle without exits in it.
pub fn tail_kind(g: &Graph, m: &VertexSet) -> Result<TailKind> {
    if m.is_empty() || !check_mt(g, m).is_maximal_tail() {
        return Err(Error::NotMaximalTail(m.display(g)));
    }
    Ok(if no_exit_cycles_in(g, m).is_empty() {
        TailKind::Gamma
    } else {
        TailKind::Tau
    })
}

/// All maximal tails, each with kind and no-exit cycles populated.
///
/// Enumeration goes through the hereditary saturated lattice: complements of
/// its members are exactly the sets with MT1 and MT2, and MT3 is then a
/// filter. Tails come out ordered by decreasing size, ties broken
/// lexicographically by member names, which puts the full tail (when it is
/// one) first.
pub fn enumerate_maximal_tails(g: &Graph) -> Result<Vec<MaximalTail>> {
    let mut tails: Vec<MaximalTail> = enumerate_hsat(g)?
        .into_iter()
        .map(|h| h.complement(g))
        .filter(|m| !m.is_empty() && mt3_witness(g, m).is_none())
        .map(|m| {
            let no_exit = no_exit_cycles_in(g, &m);
            MaximalTail {
                kind: if no_exit.is_empty() {
                    TailKind::Gamma
                } else {
                    TailKind::Tau
                },
                no_exit_cycles: no_exit,
                members: m,
            }
        })
        .collect();
    tails.sort_by_cached_key(|t| {
        let (size, names) = t.members.order_key(g);
        (usize::MAX - size, names)
    });
    Ok(tails)
}
