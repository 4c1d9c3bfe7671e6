//! Exact conditional (k, r)-coloring.
//!
//! A conditional (k, r)-coloring is a proper coloring with colors `1..=k`
//! in which every vertex `v` sees at least `min{d(v), r}` distinct colors
//! among its neighbors. This crate computes the smallest such k (χ_r),
//! decides whether all optimal colorings induce the same color classes,
//! generates the graph families the closed-form results are stated for, and
//! evaluates those closed forms as checkable predictions.

pub mod coloring;
pub mod generators;
pub mod graph;
pub mod io;
pub mod ops;
pub mod oracles;
pub mod solver;
pub mod unique;

pub use coloring::{verify, Color, ColoringMap, Partition, Verdict, Violation};
pub use generators::{EdgeChoice, FamilySpec};
pub use graph::{Graph, GraphError, Vertex};
pub use oracles::{Match, Prediction, PredictionKind, Source};
pub use solver::{chi_r, feasible, lower_bound, Limits, SolveError, SolveResult};
pub use unique::{enumerate_partitions, is_uniquely_colorable, ChiCheck, UniquenessResult};
