//! Parallel d-stable traces of simple connected graphs.
//!
//! A double trace is a closed walk that uses every edge exactly twice. It is
//! parallel when both traversals of each edge go the same way, and d-stable
//! when no vertex `v` has a nonempty proper neighbor subset `N` of size at
//! most `d` such that every visit to `v` entering from `N` also leaves into
//! `N`. A connected graph has a parallel d-stable trace exactly when it is
//! Eulerian with minimum degree above `d`; [`construct::parallel_d_stable`]
//! builds one.

pub mod batch;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod graph;
pub mod heuristics;
pub mod trace;
pub mod transform;

pub use construct::{
    euler_circuit, parallel_1_stable, parallel_2_stable_4regular, parallel_d_stable,
    remove_2_repetition, Arrangement, PassageRewrite,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{BlockDecomposition, ContractionSpec, Graph, Subtree, VertexId};
pub use heuristics::{
    block_concatenation, euler_concatenation, Failure, FailureReason, HeuristicOutcome,
    DEFAULT_SEARCH_BUDGET,
};
pub use trace::{
    minimal_witnesses, DoubleTrace, EdgeClassification, EdgeTag, Repetition, StabilityReport,
    TraceKind, TransitionSystem,
};
pub use transform::{expand_to_4_regular, project_trace, ExpansionMap, PathExpansion};
