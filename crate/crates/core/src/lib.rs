//! Maximal Diophantine graphs.
//!
//! A graph on `n` vertices is Diophantine when its vertices can be labeled
//! bijectively with `1..=n` so that every edge joins labels whose gcd divides
//! `n`. This crate builds the maximal such graph `D_n`, evaluates closed forms
//! for its invariants, checks necessary and sufficient conditions on arbitrary
//! graphs, and decides labelability exactly.
//!
//! The number-theoretic layer ([`numtheory`]) is generic over the unsigned
//! integer type through [`Int`]; graph-level code fixes labels to [`Label`].

pub mod conditions;
pub mod error;
pub mod format;
pub mod graph;
mod int;
pub mod labeler;
pub mod maximal;
pub mod numtheory;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{DegreeSequence, Graph, LabeledGraph, VertexId};
pub use int::Int;

/// Vertex label and modulus type for `D_n`.
pub type Label = u64;

/// Exact rational threshold, as taken by [`numtheory::gamma_x`].
pub type Threshold = num_rational::Ratio<Label>;
