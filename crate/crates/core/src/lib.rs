//! Subgraph matching over a candidate search tree (CST).
//!
//! The pipeline:
//!
//! 1. [`plan::build_query_plan`] picks a root, a BFS spanning tree of the
//!    query and a path-based matching order.
//! 2. [`cst::construct_cst`] builds and refines the candidate index.
//! 3. [`partition::partition_cst`] splits it until every piece fits a byte
//!    budget and a list-length budget.
//! 4. [`scheduler::SchedulerState`] routes each piece either to the host
//!    backtracking matcher or to the simulated kernel, bounded by a host share.
//! 5. [`kernel::fast_enumerate`] runs the kernel pipeline and reports
//!    modeled cycle counts for three pipeline variants.
//!
//! [`scheduler::run_job`] does all of it; [`oracle`] holds brute-force
//! references for testing; [`gen`] and [`fixtures`] supply inputs.

pub mod cli;
pub mod cst;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod partition;
pub mod plan;
pub mod scheduler;
pub mod workload;

pub use cst::{construct_cst, Cst};
pub use error::{Error, Result};
pub use graph::{load_graph, save_graph, Embedding, Graph, Label, VertexId};
pub use kernel::{fast_enumerate, KernelConfig, KernelRun, Variant};
pub use partition::{partition_cst, PartitionConfig};
pub use plan::{build_query_plan, QueryPlan};
pub use scheduler::{host_match, run_job, JobConfig, JobOutput, JobStats, SchedulerState};
pub use workload::{estimate_workload, WorkloadTable};
