//! Host/kernel work sharing and the end-to-end job driver.

use std::time::Instant;

use serde::Serialize;

use crate::cst::{construct_cst, Cst};
use crate::error::{Error, Result};
use crate::graph::{Embedding, Graph, VertexId};
use crate::kernel::{
    cycle_estimate, fast_enumerate, simulate_dataflow_schedule, CycleModel, KernelConfig, RoundTrace, Variant,
};
use crate::partition::{partition_cst, PartitionConfig};
use crate::plan::{build_query_plan, QueryPlan};
use crate::workload::estimate_workload;

/// Host share of the total workload that gave the best results in practice.
pub const DEFAULT_DELTA: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Host,
    Kernel,
}

/// Outcome of [`SchedulerState::route`]. Host-bound CSTs stay queued inside
/// the state; kernel-bound ones are handed back for immediate execution.
#[derive(Debug)]
pub enum Routed {
    Host,
    Kernel(Cst),
}

/// One routing decision, kept for replaying the share bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RouteDecision {
    pub workload: u64,
    pub side: Side,
}

#[derive(Debug)]
pub struct SchedulerState {
    /// `W_C`: workload routed to the host.
    pub w_c: u64,
    /// `W_F`: workload routed to the kernel.
    pub w_f: u64,
    delta: f64,
    host_queue: Vec<Cst>,
    decisions: Vec<RouteDecision>,
}

impl SchedulerState {
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidConfig(format!("delta must lie in [0, 1], got {delta}")));
        }
        Ok(SchedulerState {
            w_c: 0,
            w_f: 0,
            delta,
            host_queue: Vec::new(),
            decisions: Vec::new(),
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// True iff `W_C + w < δ·(W_C + W_F + w)`.
    pub fn prefers_host(&self, w: u64) -> bool {
        let host = self.w_c.saturating_add(w) as f64;
        let total = self.w_c.saturating_add(self.w_f).saturating_add(w) as f64;
        host < self.delta * total
    }

    /// Assigns a CST with workload `w` and updates the matching accumulator.
    pub fn route(&mut self, cst: Cst, w: u64) -> Routed {
        let side = if self.prefers_host(w) { Side::Host } else { Side::Kernel };
        self.decisions.push(RouteDecision { workload: w, side });
        match side {
            Side::Host => {
                self.w_c = self.w_c.saturating_add(w);
                self.host_queue.push(cst);
                Routed::Host
            }
            Side::Kernel => {
                self.w_f = self.w_f.saturating_add(w);
                Routed::Kernel(cst)
            }
        }
    }

    pub fn host_queue(&self) -> &[Cst] {
        &self.host_queue
    }

    /// Empties the host queue.
    pub fn take_host_queue(&mut self) -> Vec<Cst> {
        std::mem::take(&mut self.host_queue)
    }

    pub fn decisions(&self) -> &[RouteDecision] {
        &self.decisions
    }

    /// `W_C / (W_C + W_F)`, zero before any work is routed.
    pub fn host_fraction(&self) -> f64 {
        let total = self.w_c.saturating_add(self.w_f);
        if total == 0 {
            0.0
        } else {
            self.w_c as f64 / total as f64
        }
    }
}

/// Backtracking matcher over the CST alone: extends along the matching order
/// through tree adjacency, checking injectivity and every earlier non-tree
/// neighbor. Returns matching-order tuples, sorted.
pub fn host_match(cst: &Cst, plan: &QueryPlan) -> Vec<Embedding> {
    let mut out = Vec::new();
    if cst.has_empty_candidates() {
        return out;
    }
    let mut prefix = Vec::with_capacity(plan.vertex_count());
    for &v in cst.candidates(plan.root()) {
        prefix.push(v);
        backtrack(cst, plan, &mut prefix, &mut out);
        prefix.pop();
    }
    out.sort_unstable();
    out
}

fn backtrack(cst: &Cst, plan: &QueryPlan, prefix: &mut Vec<VertexId>, out: &mut Vec<Embedding>) {
    let pos = prefix.len();
    if pos == plan.vertex_count() {
        out.push(Embedding(prefix.clone()));
        return;
    }
    let u = plan.order()[pos];
    let parent = plan.parent(u).expect("non-root vertex has a parent");
    let vp = prefix[plan.position(parent)];
    for &v in cst.adjacency(parent, u, vp).unwrap_or(&[]) {
        if prefix.contains(&v) {
            continue;
        }
        let edges_ok = plan
            .earlier_non_tree_neighbors(u)
            .all(|un| cst.has_edge(u, un, v, prefix[plan.position(un)]));
        if edges_ok {
            prefix.push(v);
            backtrack(cst, plan, prefix, out);
            prefix.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JobConfig {
    pub partition: PartitionConfig,
    pub kernel: KernelConfig,
    /// Host share threshold `δ`; zero sends everything to the kernel.
    pub delta: f64,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            partition: PartitionConfig::default(),
            kernel: KernelConfig::default(),
            delta: DEFAULT_DELTA,
        }
    }
}

/// Job statistics; serialized as the `run` report.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct JobStats {
    pub embeddings: usize,
    pub partitions: usize,
    pub w_c: u64,
    pub w_f: u64,
    pub cycles_basic: f64,
    pub cycles_task: f64,
    pub cycles_sep: f64,
    pub wall_ms: f64,
    pub variant: String,
    pub delta: f64,
    pub host_partitions: usize,
    pub kernel_partitions: usize,
    pub host_embeddings: usize,
    pub kernel_embeddings: usize,
    /// `N`: partial results generated by the kernel.
    pub n_total: u64,
    /// `M`: edge validation tasks generated by the kernel.
    pub m_total: u64,
    /// Closed-form cycles of the configured variant.
    pub cycles: f64,
    /// Event-driven makespan of the configured variant.
    pub cycles_sim: f64,
    pub rounds: usize,
    pub peak_buffer: usize,
    pub cst_size_bytes: usize,
    pub cst_max_degree: usize,
}

#[derive(Clone, Debug)]
pub struct JobOutput {
    /// Merged embeddings indexed by query vertex id, sorted.
    pub embeddings: Vec<Vec<VertexId>>,
    pub stats: JobStats,
    /// Kernel rounds over all kernel-side CSTs, numbered consecutively.
    pub trace: Vec<RoundTrace>,
    pub decisions: Vec<RouteDecision>,
    /// Counters summed over every kernel-side CST.
    pub model: CycleModel,
    pub order: Vec<usize>,
}

/// Plans the query, builds and partitions the CST, routes each partition to
/// the host or the kernel, runs both sides and merges the results.
///
/// Kernel partitions run as soon as they are routed; host partitions run after
/// partitioning has finished.
pub fn run_job(data: &Graph, query: &Graph, cfg: &JobConfig) -> Result<JobOutput> {
    let started = Instant::now();
    let plan = build_query_plan(query, data)?;
    let cst = construct_cst(data, query, &plan);
    let (cst_size_bytes, cst_max_degree) = (cst.size_bytes(), cst.max_degree());

    let mut state = SchedulerState::new(cfg.delta)?;
    let kernel_cfg = KernelConfig {
        port_max: Some(cfg.partition.port_max),
        ..cfg.kernel
    };
    let mut model = kernel_cfg.model.with_counters(0, 0);
    let mut kernel_results: Vec<Embedding> = Vec::new();
    let mut trace: Vec<RoundTrace> = Vec::new();
    let mut peak_buffer = 0;
    let mut kernel_partitions = 0;

    let partitions = partition_cst(cst, &plan, 0, &cfg.partition, &mut |part: Cst| {
        let w = estimate_workload(&part, &plan).total();
        if let Routed::Kernel(part) = state.route(part, w) {
            let run = fast_enumerate(&part, &plan, &kernel_cfg)?;
            model.absorb(&run.model);
            peak_buffer = peak_buffer.max(run.peak_occupancy);
            kernel_partitions += 1;
            let base = trace.len();
            trace.extend(run.trace.into_iter().map(|r| RoundTrace {
                round: base + r.round,
                ..r
            }));
            kernel_results.extend(run.embeddings);
        }
        Ok(())
    })?;

    let host_parts = state.take_host_queue();
    let host_partitions = host_parts.len();
    let mut host_results: Vec<Embedding> = Vec::new();
    for part in &host_parts {
        host_results.extend(host_match(part, &plan));
    }

    let kernel_embeddings = kernel_results.len();
    let host_embeddings = host_results.len();
    let mut embeddings: Vec<Vec<VertexId>> = kernel_results
        .into_iter()
        .chain(host_results)
        .map(|e| e.by_query_vertex(plan.order()))
        .collect();
    embeddings.sort_unstable();

    let n_o = kernel_cfg.n_o;
    let variant = kernel_cfg.variant;
    let stats = JobStats {
        embeddings: embeddings.len(),
        partitions,
        w_c: state.w_c,
        w_f: state.w_f,
        cycles_basic: cycle_estimate(&model, Variant::Basic, n_o),
        cycles_task: cycle_estimate(&model, Variant::Task, n_o),
        cycles_sep: cycle_estimate(&model, Variant::Sep, n_o),
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
        variant: variant.to_string(),
        delta: cfg.delta,
        host_partitions,
        kernel_partitions,
        host_embeddings,
        kernel_embeddings,
        n_total: model.n_total,
        m_total: model.m_total,
        cycles: cycle_estimate(&model, variant, n_o),
        cycles_sim: simulate_dataflow_schedule(&trace, variant, &model).makespan,
        rounds: trace.len(),
        peak_buffer,
        cst_size_bytes,
        cst_max_degree,
    };
    Ok(JobOutput {
        embeddings,
        stats,
        trace,
        decisions: state.decisions().to_vec(),
        model,
        order: plan.order().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_delta_never_prefers_host() {
        let s = SchedulerState::new(0.0).unwrap();
        assert!(!s.prefers_host(0));
        assert!(!s.prefers_host(7));
    }

    #[test]
    fn first_cst_goes_to_kernel_at_half_share() {
        let s = SchedulerState::new(0.5).unwrap();
        // 7 < 0.5 * 7 is false
        assert!(!s.prefers_host(7));
    }

    #[test]
    fn rejects_out_of_range_delta() {
        assert!(SchedulerState::new(-0.1).is_err());
        assert!(SchedulerState::new(1.5).is_err());
        assert!(SchedulerState::new(f64::NAN).is_err());
    }
}
