//! Functional simulation of the matching kernel.
//!
//! [`fast_enumerate`] drives the four pipeline modules in [`stages`] round by
//! round over a bounded [`buffer::ResultBuffer`] and records the counters of
//! the [`cycles::CycleModel`]. The three variants produce identical
//! embeddings and differ only in how their cycles are modeled.

pub mod buffer;
pub mod cycles;
pub mod dataflow;
pub mod stages;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cst::Cst;
use crate::error::{Error, Result};
use crate::graph::Embedding;
use crate::plan::QueryPlan;

pub use buffer::{PartialResult, Pending, ResultBuffer};
pub use cycles::{cycle_estimate, CycleModel, DEFAULT_DRAM_RATIO, DEFAULT_LATENCIES};
pub use dataflow::{simulate_dataflow_schedule, DataflowReport};
pub use stages::{generate, synchronize, validate_edges, validate_visited, EdgeTask, TaskBatch, VisitedTask};

pub const DEFAULT_N_O: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Stages run one after another.
    Basic,
    /// Stages overlap through inter-stage FIFOs.
    Task,
    /// As `Task`, with separate `t_v` and `t_n` generators.
    Sep,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Basic, Variant::Task, Variant::Sep];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Task => "task",
            Variant::Sep => "sep",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "basic" => Ok(Variant::Basic),
            "task" => Ok(Variant::Task),
            "sep" => Ok(Variant::Sep),
            other => Err(Error::InvalidConfig(format!("unknown kernel variant `{other}`"))),
        }
    }
}

/// One kernel round: a single Generator invocation and the validation of its
/// batch. Serializes to the per-round CSV trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub round: usize,
    /// Depth of the expanded input partials.
    pub depth: usize,
    #[serde(rename = "p_o")]
    pub outputs: usize,
    #[serde(rename = "t_v")]
    pub visited_tasks: usize,
    #[serde(rename = "t_n")]
    pub edge_tasks: usize,
    pub accepted: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelConfig {
    pub variant: Variant,
    /// `N_o`: per-round output cap and per-depth buffer capacity.
    pub n_o: usize,
    /// Rejects CSTs whose longest list exceeds this many entries.
    pub port_max: Option<usize>,
    /// Cycle constants; counters are ignored and reset per run.
    pub model: CycleModel,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            variant: Variant::Sep,
            n_o: DEFAULT_N_O,
            port_max: None,
            model: CycleModel::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KernelRun {
    /// Embeddings in matching-order tuples, sorted.
    pub embeddings: Vec<Embedding>,
    /// Cycle constants with the final `N` and `M` counters.
    pub model: CycleModel,
    pub trace: Vec<RoundTrace>,
    /// Largest per-depth buffer occupancy seen during the run.
    pub peak_occupancy: usize,
    /// Closed-form cycle estimate for the configured variant.
    pub cycles: f64,
}

/// Enumerates every embedding of the CST's scope with the kernel pipeline.
///
/// Root candidates are seeded as depth-1 partials in chunks of at most `N_o`
/// whenever that level runs empty. Each round expands the deepest non-empty
/// level of the buffer.
pub fn fast_enumerate(cst: &Cst, plan: &QueryPlan, cfg: &KernelConfig) -> Result<KernelRun> {
    if cfg.n_o == 0 {
        return Err(Error::InvalidConfig("N_o must be at least 1".into()));
    }
    if let Some(port_max) = cfg.port_max {
        if cst.max_degree() > port_max {
            return Err(Error::PortLimit {
                max_degree: cst.max_degree(),
                port_max,
            });
        }
    }
    let n = plan.vertex_count();
    let mut model = cfg.model.with_counters(0, 0);
    let mut embeddings = Vec::new();
    let mut trace = Vec::new();
    let roots = cst.candidates(plan.root());

    if n == 1 {
        embeddings.extend(roots.iter().map(|&v| Embedding(vec![v])));
        model.record(roots.len(), 0);
    } else if !cst.has_empty_candidates() {
        let mut buffer = ResultBuffer::new(n, cfg.n_o);
        let mut next_root = 0;
        loop {
            if buffer.len(1) == 0 && next_root < roots.len() {
                let end = (next_root + cfg.n_o).min(roots.len());
                for &v in &roots[next_root..end] {
                    buffer.push(PartialResult::root(v));
                }
                next_root = end;
            }
            let Some(depth) = buffer.deepest() else {
                break;
            };
            let mut batch = generate(&mut buffer, cst, plan).expect("buffer is not empty");
            batch.visited_bits = validate_visited(&batch.visited_tasks, &batch.sources);
            batch.edge_bits = validate_edges(cst, batch.vertex, &batch.edge_tasks, batch.outputs.len());
            model.record(batch.outputs.len(), batch.edge_tasks.len());
            let mut row = RoundTrace {
                round: trace.len(),
                depth,
                outputs: batch.outputs.len(),
                visited_tasks: batch.visited_tasks.len(),
                edge_tasks: batch.edge_tasks.len(),
                accepted: 0,
            };
            row.accepted = synchronize(batch, &mut buffer, &mut embeddings, n);
            trace.push(row);
        }
        return Ok(finish(embeddings, model, trace, buffer.peak_occupancy(), cfg));
    }
    Ok(finish(embeddings, model, trace, 0, cfg))
}

fn finish(
    mut embeddings: Vec<Embedding>,
    model: CycleModel,
    trace: Vec<RoundTrace>,
    peak_occupancy: usize,
    cfg: &KernelConfig,
) -> KernelRun {
    embeddings.sort_unstable();
    KernelRun {
        cycles: cycle_estimate(&model, cfg.variant, cfg.n_o),
        embeddings,
        model,
        trace,
        peak_occupancy,
    }
}
