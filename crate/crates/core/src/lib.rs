//! Grafts, minimum joins and the Kotzig-Lovász partition of a graft.
//!
//! A graft is a graph with a set `T` of terminals such that every connected
//! component holds an even number of them. A join is an edge set whose
//! odd-degree vertices are exactly `T`; a minimum join generalizes a
//! perfect matching (take `T = V`). This crate computes minimum joins,
//! allowed edges, join-induced distances, factor-components, the root
//! decomposition of distances and the partition of vertices into
//! Kotzig-Lovász classes, together with an exhaustive [`oracle`] used to
//! cross-check everything on small instances.
//!
//! ```
//! use graftkl::{Graft, Graph, kl_partition};
//!
//! let square = Graph::from_edges(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]).unwrap();
//! let graft = Graft::full(square).unwrap();
//! let classes = kl_partition(&graft).classes;
//! assert_eq!(classes.len(), 2);
//! ```

pub mod cli;
pub mod distance;
pub mod error;
pub mod graft;
pub mod graph;
pub mod join;
pub mod matching;
pub mod oracle;
pub mod sebo;
pub mod structure;

pub use distance::{dist, distance_table, path_weight, DistanceTable, JoinWeighting};
pub use error::{Error, Result};
pub use graft::{is_graft, Graft};
pub use graph::{symmetric_difference, Contraction, Edge, EdgeId, EdgeSet, Graph, Path, Vertex, VertexSet};
pub use join::{allowed_edges, is_join, is_minimum_join, min_join, nu, Join, JoinCertificate, JoinSolver};
pub use sebo::{lift_negative_path, sebo_decomposition, verify_sebo, CheckItem, SeboDecomposition};
pub use structure::{
    factor_components, is_comb_bipartite, kl_classes_of_component, kl_partition, refinement_report, same_class,
    CombBipartiteView, FactorComponent, KlPartition, RefinementEntry,
};
