//! Recursive CST partitioning under a byte budget and a list-length budget.

use crate::cst::Cst;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::plan::QueryPlan;

pub const DEFAULT_DELTA_S: usize = 256 * 1024;
pub const DEFAULT_DELTA_D: usize = 16;
pub const DEFAULT_PORT_MAX: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionConfig {
    /// `δ_S`: byte budget per emitted CST.
    pub delta_s: usize,
    /// `δ_D`: budget on the longest adjacency list.
    pub delta_d: usize,
    /// Hard cap on `δ_D` (array-partition port limit of the kernel).
    pub port_max: usize,
    /// Overrides the computed partition factor when set (must be ≥ 2).
    pub fixed_k: Option<usize>,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig {
            delta_s: DEFAULT_DELTA_S,
            delta_d: DEFAULT_DELTA_D,
            port_max: DEFAULT_PORT_MAX,
            fixed_k: None,
        }
    }
}

impl PartitionConfig {
    pub fn validate(&self, query_vertices: usize) -> Result<()> {
        if self.delta_d == 0 {
            return Err(Error::InvalidConfig("delta_d must be at least 1".into()));
        }
        if self.delta_d > self.port_max {
            return Err(Error::InvalidConfig(format!(
                "delta_d {} exceeds port_max {}",
                self.delta_d, self.port_max
            )));
        }
        let header = Cst::header_bytes(query_vertices);
        if self.delta_s <= header {
            return Err(Error::InvalidConfig(format!(
                "delta_s {} must exceed the {header}-byte CST header",
                self.delta_s
            )));
        }
        if matches!(self.fixed_k, Some(k) if k < 2) {
            return Err(Error::InvalidConfig("fixed k must be at least 2".into()));
        }
        Ok(())
    }

    pub fn fits(&self, cst: &Cst) -> bool {
        cst.size_bytes() <= self.delta_s && cst.max_degree() <= self.delta_d
    }
}

/// `k = min(⌈max(|CST|/δ_S, D_CST/δ_D)⌉, |C(u)|)`, at least 1.
pub fn compute_partition_factor(cst: &Cst, cfg: &PartitionConfig, u: usize) -> usize {
    let by_size = cst.size_bytes().div_ceil(cfg.delta_s);
    let by_degree = cst.max_degree().div_ceil(cfg.delta_d);
    by_size
        .max(by_degree)
        .min(cst.candidates(u).len())
        .max(1)
}

/// Splits a sorted slice into `k` contiguous chunks whose sizes differ by at most one.
pub fn even_chunks<T>(items: &[T], k: usize) -> Vec<&[T]> {
    let k = k.clamp(1, items.len().max(1));
    let base = items.len() / k;
    let extra = items.len() % k;
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        out.push(&items[start..start + len]);
        start += len;
    }
    out
}

/// Restricts `cst` to embeddings mapping `u` into `part`.
///
/// Vertices before `u` in the matching order keep all candidates. Vertices
/// after `u` are visited in order and keep a candidate only if it is adjacent
/// to a retained candidate of some earlier query neighbor.
pub fn project_cst(cst: &Cst, plan: &QueryPlan, u: usize, part: &[VertexId]) -> Cst {
    let n = plan.vertex_count();
    let mut retained: Vec<Vec<VertexId>> = (0..n).map(|w| cst.candidates(w).to_vec()).collect();
    let mut own: Vec<VertexId> = part
        .iter()
        .copied()
        .filter(|&v| cst.candidate_index(u, v).is_some())
        .collect();
    own.sort_unstable();
    own.dedup();
    retained[u] = own;

    let start = plan.position(u) + 1;
    for &w in &plan.order()[start..] {
        let mut reach = vec![false; cst.candidates(w).len()];
        let p = plan.parent(w).expect("non-root vertex has a parent");
        let tree = cst.edge(p, w).expect("tree edge stored");
        for (vp, list) in cst.candidates(p).iter().zip(tree.lists()) {
            if retained[p].binary_search(vp).is_ok() {
                for &x in list {
                    reach[cst.candidate_index(w, x).expect("list entry is a candidate")] = true;
                }
            }
        }
        for wn in plan.earlier_non_tree_neighbors(w) {
            let edge = cst.edge(w, wn).expect("non-tree edge stored");
            for (i, list) in edge.lists().iter().enumerate() {
                if !reach[i] && list.iter().any(|x| retained[wn].binary_search(x).is_ok()) {
                    reach[i] = true;
                }
            }
        }
        retained[w] = cst
            .candidates(w)
            .iter()
            .zip(&reach)
            .filter(|(_, &r)| r)
            .map(|(&v, _)| v)
            .collect();
    }
    cst.restrict(&retained)
}

/// Emits CSTs that fit both budgets and jointly cover exactly the embeddings
/// of `cst`, starting the split at `plan.order()[index]`. Returns how many
/// CSTs were emitted.
///
/// Projections with an empty candidate set hold no embeddings and are dropped.
pub fn partition_cst<F>(
    cst: Cst,
    plan: &QueryPlan,
    index: usize,
    cfg: &PartitionConfig,
    sink: &mut F,
) -> Result<usize>
where
    F: FnMut(Cst) -> Result<()>,
{
    cfg.validate(plan.vertex_count())?;
    if index >= plan.vertex_count() {
        return Err(Error::InvalidConfig(format!(
            "partition index {index} is past the matching order"
        )));
    }
    if cfg.fits(&cst) {
        sink(cst)?;
        return Ok(1);
    }
    split(cst, plan, index, cfg, sink)
}

fn split<F>(cst: Cst, plan: &QueryPlan, index: usize, cfg: &PartitionConfig, sink: &mut F) -> Result<usize>
where
    F: FnMut(Cst) -> Result<()>,
{
    if cst.has_empty_candidates() {
        return Ok(0);
    }
    let u = plan.order()[index];
    let candidates = cst.candidates(u);
    if candidates.len() <= 1 {
        if index + 1 >= plan.vertex_count() {
            return Err(Error::Unsplittable {
                vertex: u,
                size_bytes: cst.size_bytes(),
                max_degree: cst.max_degree(),
            });
        }
        return split(cst, plan, index + 1, cfg, sink);
    }

    let k = match cfg.fixed_k {
        Some(k) => k.min(candidates.len()),
        None => compute_partition_factor(&cst, cfg, u),
    }
    .max(2);

    let mut emitted = 0;
    for part in even_chunks(candidates, k) {
        let sub = project_cst(&cst, plan, u, part);
        if sub.has_empty_candidates() {
            continue;
        }
        if cfg.fits(&sub) {
            sink(sub)?;
            emitted += 1;
        } else {
            emitted += split(sub, plan, index, cfg, sink)?;
        }
    }
    Ok(emitted)
}
