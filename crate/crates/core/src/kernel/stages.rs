//! The four pipeline modules: Generator, Visited Validator, Edge Validator and
//! Synchronizer. Each operates on one round's [`TaskBatch`].

use crate::cst::Cst;
use crate::graph::{Embedding, VertexId};
use crate::plan::QueryPlan;

use super::buffer::{Pending, PartialResult, ResultBuffer};

/// `t_v`: candidate `v` must not already occur in source partial `source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VisitedTask {
    pub v: VertexId,
    pub source: usize,
}

/// `t_n`: the new mapping `v` of the expanded vertex must be adjacent to
/// `v_n`, the mapping of its earlier non-tree neighbor `neighbor`. `output`
/// is the index of the `p_o` in the batch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeTask {
    pub v: VertexId,
    pub v_n: VertexId,
    pub neighbor: usize,
    pub output: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TaskBatch {
    /// Query vertex mapped by this round.
    pub vertex: usize,
    /// Input partials `p_i` consumed this round (a continuation counts once).
    pub sources: Vec<PartialResult>,
    /// `P_o`.
    pub outputs: Vec<PartialResult>,
    /// `T_v`, one per output.
    pub visited_tasks: Vec<VisitedTask>,
    /// `T_n`, grouped by non-tree neighbor.
    pub edge_tasks: Vec<EdgeTask>,
    /// Number of non-tree neighbor groups in `edge_tasks`.
    pub edge_groups: usize,
    /// `B_v`.
    pub visited_bits: Vec<bool>,
    /// `B_n`.
    pub edge_bits: Vec<bool>,
}

impl TaskBatch {
    /// Input depth of the round.
    pub fn depth(&self) -> usize {
        self.outputs.first().map_or(0, |p| p.depth() - 1)
    }

    /// Indices of outputs that passed both validations.
    pub fn accepted(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.outputs.len()).filter(|&i| self.visited_bits[i] && self.edge_bits[i])
    }
}

/// Pops partials from the deepest non-empty level of `buffer` and expands each
/// by the candidates of the next query vertex reachable from its tree parent's
/// mapping, producing at most `N_o` outputs.
///
/// A partial whose remaining candidates do not fit is pushed back unconsumed,
/// unless the batch is still empty, in which case its first `N_o` candidates
/// are expanded and a continuation is pushed back. Returns `None` when the
/// buffer is empty.
pub fn generate(buffer: &mut ResultBuffer, cst: &Cst, plan: &QueryPlan) -> Option<TaskBatch> {
    let depth = buffer.deepest()?;
    let n_o = buffer.capacity();
    let u = plan.order()[depth];
    let parent = plan.parent(u).expect("non-root vertex has a parent");
    let parent_pos = plan.position(parent);

    let mut batch = TaskBatch {
        vertex: u,
        ..TaskBatch::default()
    };
    while batch.outputs.len() < n_o {
        let Some(pending) = buffer.pop(depth) else {
            break;
        };
        let vp = pending.partial.get(parent_pos);
        let all = cst.adjacency(parent, u, vp).unwrap_or(&[]);
        let rest = &all[pending.resume.min(all.len())..];
        let room = n_o - batch.outputs.len();

        let take = if rest.len() <= room {
            rest.len()
        } else if batch.outputs.is_empty() {
            room
        } else {
            buffer.push_front(pending);
            break;
        };

        let source = batch.sources.len();
        for &v in &rest[..take] {
            batch.visited_tasks.push(VisitedTask { v, source });
            batch.outputs.push(pending.partial.extended(v));
        }
        let continuation = (take < rest.len()).then(|| Pending {
            partial: pending.partial.clone(),
            resume: pending.resume + take,
        });
        batch.sources.push(pending.partial);
        if let Some(c) = continuation {
            buffer.push_front(c);
            break;
        }
    }

    let new_pos = plan.position(u);
    for un in plan.earlier_non_tree_neighbors(u) {
        let pos = plan.position(un);
        batch.edge_groups += 1;
        for (i, p) in batch.outputs.iter().enumerate() {
            batch.edge_tasks.push(EdgeTask {
                v: p.get(new_pos),
                v_n: p.get(pos),
                neighbor: un,
                output: i,
            });
        }
    }
    Some(batch)
}

/// `B_v`: bit `i` is set iff task `i`'s candidate is absent from its source.
pub fn validate_visited(tasks: &[VisitedTask], sources: &[PartialResult]) -> Vec<bool> {
    tasks
        .iter()
        .map(|t| sources[t.source].vertices().iter().all(|&w| w != t.v))
        .collect()
}

/// `B_n`: bit `i` is the AND of CST edge checks over all tasks of output `i`;
/// outputs without tasks pass.
pub fn validate_edges(cst: &Cst, vertex: usize, tasks: &[EdgeTask], batch_size: usize) -> Vec<bool> {
    let mut bits = vec![true; batch_size];
    for t in tasks {
        if !cst.has_edge(vertex, t.neighbor, t.v, t.v_n) {
            bits[t.output] = false;
        }
    }
    bits
}

/// Moves valid outputs into `results` (complete) or back into `buffer`.
/// Returns the number of accepted outputs.
pub fn synchronize(
    batch: TaskBatch,
    buffer: &mut ResultBuffer,
    results: &mut Vec<Embedding>,
    order_len: usize,
) -> usize {
    assert_eq!(batch.visited_bits.len(), batch.outputs.len());
    assert_eq!(batch.edge_bits.len(), batch.outputs.len());
    let mut accepted = 0;
    for ((p, bv), bn) in batch
        .outputs
        .into_iter()
        .zip(batch.visited_bits)
        .zip(batch.edge_bits)
    {
        if !(bv && bn) {
            continue;
        }
        accepted += 1;
        if p.depth() == order_len {
            results.push(Embedding(p.into_vertices()));
        } else {
            buffer.push(p);
        }
    }
    accepted
}
