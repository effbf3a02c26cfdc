//! Executable, certificate-checked combinatorics of treewidth obstructions.
//!
//! The library provides the objects behind a structural trichotomy: a graph
//! of large treewidth carries a large complete graph, a large complete
//! bipartite induced minor (or an ample interrupted constellation), or two
//! anticomplete vertex sets of large treewidth. Everything here runs at desk
//! scale against exact solvers, and every extraction emits a self-contained
//! certificate that an independent verifier re-checks against the original
//! graph.
//!
//! Start with the `examples/` directory: one runnable example per major
//! capability (generators, treewidth certificates, constellations, Ramsey
//! tools, minor-model search, extraction pipelines, trichotomy sweeps).

pub mod budget;
pub mod constellation;
pub mod error;
pub mod generators;
pub mod graph;
pub mod search;
pub mod structures;
pub mod treewidth;

pub use budget::{Budget, CancelToken};
pub use error::{Error, Result};
pub use graph::{Graph, PathWitness, VertexSet};
