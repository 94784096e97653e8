//! Discrete-event schedule of the pipeline stages over a recorded round trace.
//!
//! Every stage issues one item per cycle and completes an item `L_i` cycles
//! after issue. Stages are linked either by a barrier (start after the
//! producer finishes) or by a FIFO stream (item `j` may issue once the
//! proportional prefix of the producer's items has completed). Rounds are
//! sequential because each round expands the previous round's output.

use serde::Serialize;

use super::cycles::CycleModel;
use super::{RoundTrace, Variant};

const READ: usize = 0;
const GEN_OUTPUT: usize = 1;
const VISITED: usize = 2;
const SYNC: usize = 3;
const GEN_EDGE: usize = 4;
const EDGE: usize = 5;
const STAGES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    Barrier,
    Stream,
}

#[derive(Clone, Debug)]
struct Stage {
    items: u64,
    latency: f64,
    /// Items are issued in this many back-to-back loops; each loop drains the
    /// pipeline before the next starts.
    groups: u64,
    deps: Vec<(usize, Link)>,
}

#[derive(Clone, Debug, Default)]
struct Timing {
    done: Vec<f64>,
    finish: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct DataflowReport {
    /// Simulated makespan over all rounds.
    pub makespan: f64,
    /// Pipeline-fill allowance: stages × max `L_i` per round.
    pub fill_slack: f64,
    pub rounds: usize,
}

fn stage_graph(variant: Variant, model: &CycleModel, n: u64, m: u64, groups: u64) -> [Stage; STAGES] {
    use Link::{Barrier as B, Stream as S};
    let l = model.latencies;
    let mk = |items, latency, groups, deps: Vec<(usize, Link)>| Stage {
        items,
        latency,
        groups,
        deps,
    };
    match variant {
        Variant::Basic => [
            mk(n, l[0], 1, vec![]),
            mk(n, l[1], 1, vec![(READ, B)]),
            mk(n, l[2], 1, vec![(GEN_EDGE, B)]),
            mk(n, l[3], 1, vec![(EDGE, B)]),
            mk(m, l[4], groups, vec![(GEN_OUTPUT, B)]),
            mk(m, l[5], 1, vec![(VISITED, B)]),
        ],
        Variant::Task => [
            mk(n, l[0], 1, vec![]),
            mk(n, l[1], 1, vec![(READ, B)]),
            mk(n, l[2], 1, vec![(GEN_OUTPUT, S)]),
            mk(n, l[3], 1, vec![(VISITED, B), (EDGE, S)]),
            mk(m, l[4], groups, vec![(GEN_OUTPUT, B), (VISITED, B)]),
            mk(m, l[5], 1, vec![(GEN_EDGE, S)]),
        ],
        Variant::Sep => [
            mk(n, l[0], 1, vec![]),
            mk(n, l[1], 1, vec![(READ, B)]),
            mk(n, l[2], 1, vec![(GEN_OUTPUT, S)]),
            mk(n, l[3], 1, vec![(VISITED, S), (EDGE, S)]),
            mk(m, l[4], groups, vec![(GEN_OUTPUT, S)]),
            mk(m, l[5], 1, vec![(GEN_EDGE, S)]),
        ],
    }
}

/// Stage indices in an order where every dependency precedes its consumer.
const fn topo_order(variant: Variant) -> [usize; STAGES] {
    match variant {
        Variant::Basic => [READ, GEN_OUTPUT, GEN_EDGE, VISITED, EDGE, SYNC],
        Variant::Task | Variant::Sep => [READ, GEN_OUTPUT, VISITED, GEN_EDGE, EDGE, SYNC],
    }
}

fn run_round(stages: &[Stage; STAGES], order: [usize; STAGES]) -> f64 {
    let mut timing: Vec<Timing> = vec![Timing::default(); STAGES];
    for s in order {
        let stage = &stages[s];
        let mut barrier = 0.0f64;
        for &(d, link) in &stage.deps {
            if link == Link::Barrier || stages[d].items == 0 || stage.items == 0 {
                barrier = barrier.max(timing[d].finish);
            }
        }
        if stage.items == 0 {
            timing[s] = Timing {
                done: Vec::new(),
                finish: barrier,
            };
            continue;
        }
        let group_len = stage.items.div_ceil(stage.groups.max(1));
        let mut done = Vec::with_capacity(stage.items as usize);
        let mut last_issue = f64::NEG_INFINITY;
        for j in 0..stage.items {
            let mut ready = barrier;
            for &(d, link) in &stage.deps {
                let producer = &stages[d];
                if link == Link::Stream && producer.items > 0 {
                    let need = ((j + 1) * producer.items).div_ceil(stage.items);
                    ready = ready.max(timing[d].done[need as usize - 1]);
                }
            }
            let mut issue = ready.max(last_issue + 1.0);
            if j > 0 && j % group_len == 0 {
                issue = issue.max(done[j as usize - 1]);
            }
            last_issue = issue;
            done.push(issue + stage.latency);
        }
        let finish = done.iter().copied().fold(barrier, f64::max);
        timing[s] = Timing { done, finish };
    }
    timing.iter().map(|t| t.finish).fold(0.0, f64::max)
}

/// Simulates every recorded round of a kernel run under `variant` and
/// returns the total makespan in modeled cycles.
pub fn simulate_dataflow_schedule(
    trace: &[RoundTrace],
    variant: Variant,
    model: &CycleModel,
) -> DataflowReport {
    let order = topo_order(variant);
    let mut makespan = 0.0;
    for round in trace {
        let n = round.outputs as u64;
        let m = round.edge_tasks as u64;
        let groups = m.checked_div(n).unwrap_or(1).max(1);
        let stages = stage_graph(variant, model, n, m, groups);
        makespan += run_round(&stages, order);
    }
    DataflowReport {
        makespan,
        fill_slack: trace.len() as f64 * STAGES as f64 * model.max_latency(),
        rounds: trace.len(),
    }
}
