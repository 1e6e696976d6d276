//! Solvers and checkers for the *total transitivity* of graphs.
//!
//! A partition `V_1, ..., V_k` of the vertices of a graph is a total
//! transitive partition when every `V_i` totally dominates every `V_j`
//! with `i <= j`, i.e. every vertex of `V_j` has a neighbour inside
//! `V_i`. Equivalently, the partition arises by repeatedly removing a
//! total dominating set. The largest achievable `k` is the total
//! transitivity `Tr_t(G)`.
//!
//! The crate provides:
//!
//! - [`graph`]: immutable simple graphs, edge-list text I/O, traversals;
//! - [`partition`]: the partition data model with validators for the
//!   total, modified-total and plain transitive variants, plus the
//!   merge/normalize transformations;
//! - [`oracle`]: an exact exponential-time solver over vertex-subset
//!   states, the ground truth on small graphs;
//! - [`tree`]: the polynomial two-pass algorithm for trees with
//!   certificate reconstruction;
//! - [`families`]: generators for named graph families and their known
//!   closed-form values;
//! - [`splitgraph`]: split-graph decomposition and the structural
//!   characterizations for `Tr_t = 1` and `Tr_t = omega - 1`;
//! - [`reduction`]: the bipartite instance builder reducing proper
//!   3-coloring to total transitivity, with witness maps both ways.
//!
//! ```
//! use ttrans::families::FamilySpec;
//! use ttrans::partition::{self, PartitionKind};
//! use ttrans::{oracle, tree};
//!
//! // The order-2 broadcast tree: smallest tree with total transitivity 2.
//! let g = FamilySpec::Tcmbt { k: 2 }.generate().unwrap().graph;
//! let result = tree::solve(&g).unwrap();
//! assert_eq!(result.value, 2);
//!
//! // The exact oracle agrees and the certificate re-validates.
//! let exact = oracle::solve(&g, PartitionKind::Total, 16).unwrap();
//! assert_eq!(exact.value, result.value);
//! assert!(partition::validate(&g, &result.certificate).unwrap().is_valid());
//! ```

pub mod families;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod reduction;
pub mod splitgraph;
pub mod tree;

pub use graph::{Graph, RootedView};
pub use partition::{PartitionKind, VertexPartition};
