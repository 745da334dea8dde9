//! The prime-spectrum correspondence and the prime/primitive/simple decision
//! procedures, plus recognition of the named algebra classes and the JSON
//! report schema used by the CLI.
//!
//! Prime ideals of `L_K(E)` are represented by graph-side descriptors: a
//! graded prime per maximal tail, and one nongraded prime per pair of a tau
//! tail and a nonzero prime of `K[x,x^-1]`.

use serde::Serialize;

use crate::constructions::{quotient_graph, DerivedGraph};
use crate::cycles::{
    comet_matrix_size, enumerate_cycles, exits_of, is_comet, mu_matrix_size, Cycle, MatrixSize,
};
use crate::graph::{Graph, VertexSet};
use crate::hsat::enumerate_hsat;
use crate::laurent::{enumerate_laurent_primes, FieldSpec, LaurentPrime};
use crate::tails::{enumerate_maximal_tails, mt3_witness, MaximalTail, TailKind};
use crate::Result;

/// Graph-side data of a nongraded prime, shared by every Laurent prime over
/// the same tau tail: the quotient `F = E/H`, its unique no-exit cycle `mu`,
/// the closure of `mu^0` inside `F`, and the matrix size of the
/// identification `I(closure(mu^0)) = M_n(K[x,x^-1])`.
///
/// `mu` and `mu_closure` are indexed in the quotient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonGradedStructure {
    pub quotient: DerivedGraph,
    pub mu: Cycle,
    pub mu_closure: VertexSet,
    pub matrix_size: MatrixSize,
}

/// A point of the prime spectrum.
// the nongraded payload dominates; descriptors are built once and not moved around
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum PrimeIdealDescriptor {
    /// `I(H)` for `H` hereditary saturated with maximal-tail complement.
    /// `H = empty` is the zero ideal, present exactly when `E^0` is itself a
    /// maximal tail.
    Graded { h: VertexSet, tail: MaximalTail },
    /// A nongraded prime attached to a tau tail and a nonzero prime of
    /// `K[x,x^-1]`.
    NonGraded {
        tail: MaximalTail,
        prime: LaurentPrime,
        structure: NonGradedStructure,
    },
}

/// Builds the quotient-side structure of a tau tail.
pub fn nongraded_structure(g: &Graph, tail: &MaximalTail) -> Result<NonGradedStructure> {
    let h = tail.members.complement(g);
    let quotient = quotient_graph(g, &h)?;
    let f = &quotient.graph;
    let no_exit: Vec<Cycle> = enumerate_cycles(f)
        .into_iter()
        .filter(|c| exits_of(f, c).is_empty())
        .collect();
    // Uniqueness of the no-exit cycle in the quotient is a theorem for tau
    // tails; a violation here is a hard failure, not a recoverable error.
    assert_eq!(
        no_exit.len(),
        1,
        "tau tail {{{}}} must leave exactly one no-exit cycle in the quotient",
        tail.members.display(g)
    );
    let mu = no_exit.into_iter().next().unwrap();
    let mu_closure = crate::hsat::closure(f, &mu.vertex_set(f));
    let matrix_size = mu_matrix_size(f, &mu)?;
    Ok(NonGradedStructure {
        quotient,
        mu,
        mu_closure,
        matrix_size,
    })
}

/// One graded prime per maximal tail, in tail order.
pub fn graded_primes(g: &Graph) -> Result<Vec<PrimeIdealDescriptor>> {
    Ok(enumerate_maximal_tails(g)?
        .into_iter()
        .map(|tail| PrimeIdealDescriptor::Graded {
            h: tail.members.complement(g),
            tail,
        })
        .collect())
}

/// The full spectrum over a finite field with the given degree bound:
/// graded primes first, then one nongraded descriptor per (tau tail, Laurent
/// prime), ordered by tail, then degree, then coefficients.
///
/// Over the rationals the nongraded part is infinite; use
/// [`symbolic_spectrum`] instead.
pub fn spectrum(
    g: &Graph,
    field: &FieldSpec,
    max_degree: usize,
) -> Result<Vec<PrimeIdealDescriptor>> {
    let primes = enumerate_laurent_primes(field, max_degree)?;
    let mut out = graded_primes(g)?;
    for tail in enumerate_maximal_tails(g)? {
        if tail.kind != TailKind::Tau {
            continue;
        }
        let structure = nongraded_structure(g, &tail)?;
        for prime in &primes {
            out.push(PrimeIdealDescriptor::NonGraded {
                tail: tail.clone(),
                prime: prime.clone(),
                structure: structure.clone(),
            });
        }
    }
    Ok(out)
}

/// Spectrum presentation over `Q`: the graded primes are listed, and each tau
/// tail stands for the infinite family indexed by `Spec(Q[x,x^-1])*`.
#[derive(Debug, Clone)]
pub struct SymbolicSpectrum {
    pub graded: Vec<PrimeIdealDescriptor>,
    pub tau: Vec<(MaximalTail, NonGradedStructure)>,
}

pub fn symbolic_spectrum(g: &Graph) -> Result<SymbolicSpectrum> {
    let graded = graded_primes(g)?;
    let mut tau = Vec::new();
    for tail in enumerate_maximal_tails(g)? {
        if tail.kind == TailKind::Tau {
            let structure = nongraded_structure(g, &tail)?;
            tau.push((tail, structure));
        }
    }
    Ok(SymbolicSpectrum { graded, tau })
}

/// Counterexample accompanying a failed decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// Vertices with no common reachable vertex.
    #[serde(rename = "mt3_pair")]
    Mt3Pair { v: String, w: String },
    #[serde(rename = "exitless_cycle")]
    ExitlessCycle { cycle: Vec<String> },
    /// A proper nontrivial hereditary saturated set.
    #[serde(rename = "proper_hereditary_saturated")]
    ProperHsat { members: Vec<String> },
}

impl Witness {
    pub fn describe(&self) -> String {
        match self {
            Witness::Mt3Pair { v, w } => format!("vertices {v} and {w} reach no common vertex"),
            Witness::ExitlessCycle { cycle } => format!("exitless cycle ({})", cycle.join(" ")),
            Witness::ProperHsat { members } => format!(
                "proper nontrivial hereditary saturated set {{{}}}",
                members.join(",")
            ),
        }
    }
}

/// Outcome of a prime/primitive/simple decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Decision {
    fn yes() -> Decision {
        Decision {
            holds: true,
            witness: None,
        }
    }

    fn no(witness: Witness) -> Decision {
        Decision {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// `L(E)` is prime iff `E^0` satisfies MT3.
pub fn is_prime_algebra(g: &Graph) -> Decision {
    match mt3_witness(g, &g.full_set()) {
        None => Decision::yes(),
        Some((v, w)) => Decision::no(Witness::Mt3Pair {
            v: g.vertex_name(v).to_owned(),
            w: g.vertex_name(w).to_owned(),
        }),
    }
}

fn first_exitless_cycle(g: &Graph) -> Option<Cycle> {
    enumerate_cycles(g)
        .into_iter()
        .find(|c| exits_of(g, c).is_empty())
}

/// `L(E)` is (left, equivalently right) primitive iff `E` satisfies
/// Condition (L) and MT3.
pub fn is_primitive_algebra(g: &Graph) -> Decision {
    if let Some(c) = first_exitless_cycle(g) {
        return Decision::no(Witness::ExitlessCycle {
            cycle: c.edge_names(g),
        });
    }
    is_prime_algebra(g)
}

/// `L(E)` is simple iff `E` satisfies Condition (L) and the hereditary
/// saturated lattice is trivial.
pub fn is_simple_algebra(g: &Graph) -> Result<Decision> {
    if let Some(c) = first_exitless_cycle(g) {
        return Ok(Decision::no(Witness::ExitlessCycle {
            cycle: c.edge_names(g),
        }));
    }
    for h in enumerate_hsat(g)? {
        if !h.is_empty() && h != g.full_set() {
            return Ok(Decision::no(Witness::ProperHsat {
                members: h.names(g),
            }));
        }
    }
    Ok(Decision::yes())
}

/// A named algebra class realized by the graph, with witness data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum AlgebraDescriptor {
    /// Line graph with `n` vertices: `M_n(K)`.
    MatrixOverField { n: usize },
    /// Single vertex with a single loop: `K[x,x^-1]`.
    LaurentRing,
    /// Rose with `n >= 2` petals: the Leavitt algebra `L(1,n)`.
    LeavittAlgebra { n: usize },
    /// One loop with one exit to a sink: the Toeplitz algebra.
    ToeplitzPattern,
    /// Comet: `M_n(K[x,x^-1])`.
    MatrixOverLaurent { n: usize },
    Unrecognized,
}

/// Pattern-matches the graph against the named classes, most specific first.
pub fn recognize_algebra(g: &Graph) -> AlgebraDescriptor {
    if let Some(n) = line_graph_order(g) {
        return AlgebraDescriptor::MatrixOverField { n };
    }
    if g.vertex_count() == 1 {
        let loops = g.edge_count();
        if loops == 1 {
            return AlgebraDescriptor::LaurentRing;
        }
        if loops >= 2 {
            return AlgebraDescriptor::LeavittAlgebra { n: loops };
        }
    }
    if is_toeplitz_pattern(g) {
        return AlgebraDescriptor::ToeplitzPattern;
    }
    if is_comet(g) {
        // comet_matrix_size cannot fail once is_comet holds
        return AlgebraDescriptor::MatrixOverLaurent {
            n: comet_matrix_size(g).unwrap(),
        };
    }
    AlgebraDescriptor::Unrecognized
}

/// `Some(n)` when the graph is a single directed line on `n` vertices.
fn line_graph_order(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() != n - 1 {
        return None;
    }
    let mut start = None;
    for v in g.vertex_ids() {
        if g.out_edges(v).len() > 1 || g.in_edges(v).len() > 1 {
            return None;
        }
        if g.in_edges(v).is_empty() {
            if start.is_some() {
                return None;
            }
            start = Some(v);
        }
    }
    let mut current = start?;
    let mut visited = 1;
    while let Some(&e) = g.out_edges(current).first() {
        current = g.edge(e).range;
        visited += 1;
    }
    (visited == n).then_some(n)
}

fn is_toeplitz_pattern(g: &Graph) -> bool {
    if g.vertex_count() != 2 || g.edge_count() != 2 {
        return false;
    }
    let loops: Vec<&crate::graph::Edge> =
        g.edges().iter().filter(|e| e.source == e.range).collect();
    if loops.len() != 1 {
        return false;
    }
    let v = loops[0].source;
    g.edges()
        .iter()
        .any(|e| e.source == v && e.range != v && g.is_sink(e.range))
}

// --- JSON report schema -----------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeReport {
    pub name: String,
    pub source: String,
    pub range: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TailReport {
    pub members: Vec<String>,
    pub kind: TailKind,
    pub no_exit_cycle: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type")]
pub enum SpectrumEntry {
    #[serde(rename = "graded")]
    Graded {
        #[serde(rename = "H")]
        h: Vec<String>,
        tail: Vec<String>,
    },
    #[serde(rename = "nongraded")]
    NonGraded {
        tail: Vec<String>,
        polynomial: String,
        matrix_size: MatrixSize,
    },
    /// Stands for the whole infinite family over one tau tail when the field
    /// is `Q`.
    #[serde(rename = "nongraded_symbolic")]
    NonGradedSymbolic {
        tail: Vec<String>,
        polynomial_family: String,
        matrix_size: MatrixSize,
    },
}

pub fn graph_report(g: &Graph) -> GraphReport {
    GraphReport {
        vertices: g.vertex_names().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeReport {
                name: e.name.clone(),
                source: g.vertex_name(e.source).to_owned(),
                range: g.vertex_name(e.range).to_owned(),
            })
            .collect(),
    }
}

pub fn tail_report(g: &Graph, tail: &MaximalTail) -> TailReport {
    TailReport {
        members: tail.members.names(g),
        kind: tail.kind,
        no_exit_cycle: tail.no_exit_cycles.first().map(|c| c.edge_names(g)),
    }
}

pub fn spectrum_entry(g: &Graph, descriptor: &PrimeIdealDescriptor) -> SpectrumEntry {
    match descriptor {
        PrimeIdealDescriptor::Graded { h, tail } => SpectrumEntry::Graded {
            h: h.names(g),
            tail: tail.members.names(g),
        },
        PrimeIdealDescriptor::NonGraded {
            tail,
            prime,
            structure,
        } => SpectrumEntry::NonGraded {
            tail: tail.members.names(g),
            polynomial: prime.to_string(),
            matrix_size: structure.matrix_size,
        },
    }
}

pub fn symbolic_entry(
    g: &Graph,
    tail: &MaximalTail,
    structure: &NonGradedStructure,
) -> SpectrumEntry {
    SpectrumEntry::NonGradedSymbolic {
        tail: tail.members.names(g),
        polynomial_family: "Spec(Q[x,x^-1])* (infinite)".to_owned(),
        matrix_size: structure.matrix_size,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::fixtures::*;

    #[test]
    fn graded_primes_examples() {
        let t = toeplitz();
        let graded = graded_primes(&t).unwrap();
        assert_eq!(graded.len(), 2);
        match &graded[0] {
            PrimeIdealDescriptor::Graded { h, tail } => {
                assert!(h.is_empty());
                assert_eq!(tail.members, t.full_set());
            }
            _ => unreachable!(),
        }
        match &graded[1] {
            PrimeIdealDescriptor::Graded { h, tail } => {
                assert_eq!(h.names(&t), ["w"]);
                assert_eq!(tail.members.names(&t), ["v"]);
            }
            _ => unreachable!(),
        }

        let r2 = rose2();
        assert_eq!(graded_primes(&r2).unwrap().len(), 1);

        // No zero ideal for two disjoint loops: E^0 is not a tail.
        let tl = two_loops();
        let graded = graded_primes(&tl).unwrap();
        assert_eq!(graded.len(), 2);
        for d in &graded {
            match d {
                PrimeIdealDescriptor::Graded { h, .. } => assert_eq!(h.len(), 1),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        let l = loop_graph();
        let gf2 = FieldSpec::PrimeField(2);
        let spec = spectrum(&l, &gf2, 2).unwrap();
        assert_eq!(spec.len(), 3);
        let polys: Vec<String> = spec
            .iter()
            .filter_map(|d| match d {
                PrimeIdealDescriptor::NonGraded { prime, .. } => Some(prime.to_string()),
                _ => None,
            })
            .collect();
        assert_eq!(polys, ["x+1", "x^2+x+1"]);

        let t = toeplitz();
        assert_eq!(spectrum(&t, &gf2, 1).unwrap().len(), 3);

        let l3 = line3();
        let spec = spectrum(&l3, &gf2, 3).unwrap();
        assert!(spec
            .iter()
            .all(|d| matches!(d, PrimeIdealDescriptor::Graded { .. })));
    }

    #[test]
    fn loop_structure_is_the_laurent_ring() {
        let l = loop_graph();
        let tail = enumerate_maximal_tails(&l).unwrap().remove(0);
        let s = nongraded_structure(&l, &tail).unwrap();
        assert_eq!(s.matrix_size, MatrixSize::Finite(1));
        assert_eq!(s.mu_closure, s.quotient.graph.full_set());
    }

    #[test]
    fn prime_decisions() {
        assert!(is_prime_algebra(&loop_graph()).holds);
        assert!(is_prime_algebra(&toeplitz()).holds);
        let d = is_prime_algebra(&two_loops());
        assert!(!d.holds);
        assert_eq!(
            d.witness,
            Some(Witness::Mt3Pair {
                v: "v".into(),
                w: "w".into()
            })
        );
    }

    #[test]
    fn primitive_decisions() {
        assert!(is_primitive_algebra(&toeplitz()).holds);
        assert!(is_primitive_algebra(&rose2()).holds);
        let d = is_primitive_algebra(&loop_graph());
        assert!(!d.holds);
        assert_eq!(
            d.witness,
            Some(Witness::ExitlessCycle { cycle: vec!["e".into()] })
        );
    }

    #[test]
    fn simple_decisions() {
        assert!(is_simple_algebra(&rose2()).unwrap().holds);
        assert!(is_simple_algebra(&line3()).unwrap().holds);
        let d = is_simple_algebra(&toeplitz()).unwrap();
        assert!(!d.holds);
        assert_eq!(
            d.witness,
            Some(Witness::ProperHsat {
                members: vec!["w".into()]
            })
        );
    }

    #[test]
    fn recognizer_examples() {
        assert_eq!(
            recognize_algebra(&line3()),
            AlgebraDescriptor::MatrixOverField { n: 3 }
        );
        assert_eq!(recognize_algebra(&loop_graph()), AlgebraDescriptor::LaurentRing);
        assert_eq!(
            recognize_algebra(&rose2()),
            AlgebraDescriptor::LeavittAlgebra { n: 2 }
        );
        assert_eq!(recognize_algebra(&toeplitz()), AlgebraDescriptor::ToeplitzPattern);
        assert_eq!(
            recognize_algebra(&comet2()),
            AlgebraDescriptor::MatrixOverLaurent { n: 2 }
        );
        assert_eq!(
            recognize_algebra(&two_loops()),
            AlgebraDescriptor::Unrecognized
        );
        let single = Graph::parse("vertex v").unwrap();
        assert_eq!(
            recognize_algebra(&single),
            AlgebraDescriptor::MatrixOverField { n: 1 }
        );
    }

    #[test]
    fn nongraded_structure_invariants_on_toeplitz() {
        let t = toeplitz();
        let tails = enumerate_maximal_tails(&t).unwrap();
        let tau = tails.iter().find(|t| t.kind == TailKind::Tau).unwrap();
        let s = nongraded_structure(&t, tau).unwrap();
        let f = &s.quotient.graph;
        assert!(exits_of(f, &s.mu).is_empty());
        assert!(s.mu.vertex_set(f).is_subset(&s.mu_closure));
        assert!(crate::hsat::is_hereditary(f, &s.mu_closure));
        assert!(crate::hsat::is_saturated(f, &s.mu_closure));
        assert_eq!(s.matrix_size, MatrixSize::Finite(1));
    }
}
