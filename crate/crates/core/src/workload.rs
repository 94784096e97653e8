//! Workload estimate of a CST: the number of tree-only candidate walks,
//! computed bottom-up.

use crate::cst::Cst;
use crate::plan::QueryPlan;

/// `c_u(v)` for every candidate, plus the total `W_CST`.
///
/// Counts saturate at `u64::MAX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkloadTable {
    counts: Vec<Vec<u64>>,
    total: u64,
}

impl WorkloadTable {
    /// `c_u(v)` by candidate index within `C(u)`.
    pub fn counts(&self, u: usize) -> &[u64] {
        &self.counts[u]
    }

    pub fn count(&self, cst: &Cst, u: usize, v: u32) -> Option<u64> {
        cst.candidate_index(u, v).map(|i| self.counts[u][i])
    }

    /// `W_CST`.
    pub fn total(&self) -> u64 {
        self.total
    }
}

pub fn estimate_workload(cst: &Cst, plan: &QueryPlan) -> WorkloadTable {
    let n = plan.vertex_count();
    let mut counts: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &u in plan.bfs_order().iter().rev() {
        let per_child: Vec<Vec<u64>> = plan
            .children(u)
            .iter()
            .map(|&c| {
                let edge = cst.edge(u, c).expect("tree edge stored");
                edge.lists()
                    .iter()
                    .map(|list| {
                        list.iter().fold(0u64, |acc, &w| {
                            let i = cst.candidate_index(c, w).expect("list entry is a candidate");
                            acc.saturating_add(counts[c][i])
                        })
                    })
                    .collect()
            })
            .collect();
        counts[u] = (0..cst.candidates(u).len())
            .map(|i| {
                per_child
                    .iter()
                    .fold(1u64, |acc, sums| acc.saturating_mul(sums[i]))
            })
            .collect();
    }
    let total = counts[plan.root()]
        .iter()
        .fold(0u64, |acc, &c| acc.saturating_add(c));
    WorkloadTable { counts, total }
}
