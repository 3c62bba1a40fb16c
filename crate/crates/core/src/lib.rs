//! Maximal k-edge-connected subgraphs: an incremental engine for k = 3, sparse
//! certificates, a static solver for any k, a fully dynamic layer, and a
//! brute-force oracle to check them against.

pub mod block_forest;
pub mod cactus;
pub mod certificate;
pub mod decomposition;
pub mod dsu;
pub mod dynamic;
pub mod format;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod solver;

pub use block_forest::{BlockError, BlockForest, BlockNode, BlockStats, CompressedPath};
pub use cactus::{
    CactusError, CactusForest, CactusNode, CactusStats, CompressedCyclePath, CycleId, OriginStats,
};
pub use certificate::{
    forest_count, forest_decomposition, interconnection_superset, k_certificate, CertificateReport,
    ForestDecomposition,
};
pub use decomposition::{DecompCounters, DecompTree, NodeId, NodeKind};
pub use dsu::{DsuError, DsuForest, ItemId};
pub use dynamic::{SparsCounters, SparsTree};
pub use format::{parse_graph, parse_ops, serialize_graph, serialize_ops, Op, ParseError};
pub use graph::{Cut, EdgeId, GraphError, Multigraph, VertexId};
pub use oracle::OracleResult;
pub use partition::Partition;
pub use solver::{global_min_cut, max_kec_subgraphs, SolverError};
