//! Deterministic solver suite for the maximum-rank (s,t)-path problem on
//! frameworks: an undirected graph paired with a linear matroid on the same
//! vertex set, two terminals, and a target rank.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] — exact scalars (prime fields, rationals, univariate rational
//!   functions) and deterministic matrix elimination;
//! * [`matroid`] — linear matroids: rank, deletion, certified truncation,
//!   representative families;
//! * [`graph`] — simple graphs, biconnectivity, vertex-disjoint paths,
//!   planarity testing via incremental face embedding;
//! * [`td`] — tree decompositions: validation, width-bounded search, nice
//!   decompositions;
//! * [`wall`] — subdivided walls: construction, layers, compasses, packings;
//! * [`instance`] — frameworks, the instance file format, problem reductions
//!   and generators;
//! * [`dp`] — the representative-set-pruned dynamic program over a nice tree
//!   decomposition;
//! * [`reduce`] — the irrelevant-vertex reduction loop for planar frameworks;
//! * [`oracle`] — brute-force reference implementations used to certify every
//!   other component at small scale;
//! * [`pipeline`] — the end-to-end solve loop used by the CLI.
//!
//! Every public operation is deterministic: identical inputs produce byte-for-
//! byte identical outputs, with no dependence on hash iteration order, time,
//! or thread scheduling.

pub mod error;
pub mod exact;
pub mod matroid;
pub mod graph;
pub mod td;
pub mod wall;
pub mod instance;
pub mod dp;
pub mod oracle;
pub mod reduce;
pub mod pipeline;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Vertex identifier. Instance files number vertices `0..n`; deletions leave
/// gaps, which every algorithm tolerates.
pub type VertexId = u32;

/// A sorted set of vertex identifiers, the ground-set currency of matroid
/// queries. Invariant: strictly ascending.
pub type GroundSubset = Vec<VertexId>;

pub use exact::{mat_basis_columns, mat_rank, Domain, ExactMatrix, FieldTag, Scalar};
pub use graph::Graph;
pub use instance::{Framework, InstanceBundle};
pub use matroid::LinearMatroid;
