//! Partition transfer graphs and their support stratification.
//!
//! The vertices of `G_n` are the partitions of `n`; two are adjacent when one
//! is obtained from the other by moving a single cell of the Ferrers diagram.
//! This crate enumerates `G_n`, tracks how the number of distinct part sizes
//! (the support size) behaves along edges, and aggregates the per-level
//! statistics into a [`StratumAtlas`].
//!
//! ```
//! use support_atlas::{StratumAtlas, Partition};
//!
//! let atlas = StratumAtlas::compute(6).unwrap();
//! assert_eq!(atlas.strata_counts, vec![4, 6, 1]);
//! assert_eq!(atlas.jump_counts.edges, 17);
//!
//! let stair: Partition = "3+2+1".parse().unwrap();
//! assert_eq!(support_atlas::degree_formula(&stair), 6);
//! ```

pub mod atlas;
pub mod io;
pub mod partition;
pub mod transfer;
pub mod union_find;
pub mod verify;

pub use atlas::{
    atlas_range, first_occurrences, level_edge_matrix, level_graph, strata_counts,
    stratum_components, stratum_degree_summary, ComponentReport, Feature, FirstOccurrenceReport,
    JumpCounts, LevelGraph, StratumAtlas, StratumSummary,
};
pub use partition::{
    divisor_count, enumerate_partitions, max_support_witness, rho, triangular, BlockForm,
    Partition, SupportProfile,
};
pub use transfer::{
    apply_transfer, build_graph, degree_formula, neighbors, support_jump_formula, valid_moves,
    Edge, PartitionGraph, TransferMove,
};
pub use verify::{verify_theorems, verify_theorems_with, VerificationReport, VerifyOptions};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("the empty partition has no block form")]
    EmptyPartition,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid transfer {from_size}->{to_size} on {partition}: {reason}")]
    InvalidMove {
        partition: String,
        from_size: u32,
        to_size: u32,
        reason: &'static str,
    },
    #[error("support size {r} infeasible for n = {n}")]
    InfeasibleSupport { n: u32, r: u32 },
    #[error("stratum {r} out of range for n = {n} (levels 1..={rho})")]
    StratumOutOfRange { n: u32, r: u32, rho: u32 },
    #[error("n must be at least 1, got {0}")]
    InvalidN(u32),
    #[error("invalid range {from}..={to}: bounds must be positive and ordered")]
    InvalidRange { from: u32, to: u32 },
    #[error("malformed input: {0}")]
    Parse(String),
}
