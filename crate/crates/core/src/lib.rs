//! Exact-computation toolkit for Hamilton `(k/2)`-cycles in `k`-uniform
//! hypergraphs.
//!
//! The crate builds the parity-obstructed extremal families `B`, `B̄` and
//! `B′`, computes minimum `d`-degree thresholds both in closed form and by
//! brute-force maximisation, decides Hamilton `ℓ`-cycle / perfect-matching /
//! path existence by exhaustive search with optional parity pruning, and
//! produces machine-checkable certificates of non-Hamiltonicity from parity
//! arithmetic alone.
//!
//! Everything is exact: degrees are integers, thresholds are integers, and
//! density parameters (`α`, `ε`) are rationals compared by cross
//! multiplication. Vertex sets are single 64-bit words, so the supported
//! vertex count is at most 64.

pub mod error;
pub mod extremal;
pub mod harness;
pub mod hypergraph;
pub mod khg;
pub mod parity;
pub mod solver;
pub mod structure;

pub use error::{Error, Result};
pub use hypergraph::{Bipartition, DegreeProfile, Hypergraph, Parity, VertexSet, MAX_VERTICES};
