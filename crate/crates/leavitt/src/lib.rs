//! Structural classification of Leavitt path algebras `L_K(E)` from the
//! combinatorics of the underlying finite directed multigraph `E`.
//!
//! The library never materializes elements of the algebra. Everything it
//! reports — hereditary saturated sets, maximal tails, Condition (L), the
//! prime spectrum, and the prime/primitive/simple decisions — is computed on
//! the graph side, together with the polynomial side of `K[x,x^-1]` needed
//! for the nongraded part of the spectrum.

#![forbid(unsafe_code)]

pub mod cli;
pub mod constructions;
pub mod cycles;
pub mod graph;
pub mod hsat;
pub mod laurent;
pub mod oracles;
pub mod spectrum;
pub mod tails;

pub use graph::{Graph, Path, VertexSet};

use thiserror::Error;

/// Errors shared across the library modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("set {{{0}}} is not hereditary")]
    NotHereditary(String),
    #[error("set {{{0}}} is not hereditary saturated")]
    NotHereditarySaturated(String),
    #[error("set {{{0}}} is not a maximal tail")]
    NotMaximalTail(String),
    #[error("the empty set is not allowed here")]
    EmptySet,
    #[error("graph has {0} vertices, above the brute-force threshold, and lattice generation is disabled")]
    HsatThreshold(usize),
    #[error("graph is not a comet")]
    NotComet,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("irreducibility over Q is undecided for degree {0} > 3 (pass the assert-irreducible flag to override)")]
    IrreducibilityUndecided(usize),
    #[error("Spec(Q[x,x^-1])* is infinite and cannot be enumerated; use a finite field")]
    NotEnumerable,
    #[error("invalid polynomial: {0}")]
    BadPolynomial(String),
    #[error("{0}")]
    Precondition(String),
    #[error("size bound exceeded: {0}")]
    OracleBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
