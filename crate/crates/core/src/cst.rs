//! Candidate search tree: per-query-vertex candidate sets plus, for every
//! stored query edge, one adjacency list per candidate.
//!
//! Stored edges are the downward tree edges `(u_p, u)` and both directions of
//! every non-tree edge. Byte accounting used for partition budgets:
//! every candidate list and every adjacency list costs an 8-byte header,
//! every stored id costs 4 bytes.

use std::fmt::Write as _;

use crate::graph::{candidates_by_local_features, Graph, VertexId};
use crate::plan::QueryPlan;

pub const LIST_HEADER_BYTES: usize = 8;
pub const ID_BYTES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Tree,
    NonTree,
}

/// Adjacency lists of one directed query edge `from -> to`.
/// `lists[i]` is `N^{from}_{to}(candidates[from][i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CstEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
    lists: Vec<Vec<VertexId>>,
}

impl CstEdge {
    pub fn lists(&self) -> &[Vec<VertexId>] {
        &self.lists
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cst {
    candidates: Vec<Vec<VertexId>>,
    edges: Vec<CstEdge>,
    slots: Vec<Option<usize>>,
    size_bytes: usize,
    max_degree: usize,
}

impl Cst {
    fn assemble(candidates: Vec<Vec<VertexId>>, edges: Vec<CstEdge>) -> Self {
        let n = candidates.len();
        let mut slots = vec![None; n * n];
        for (i, e) in edges.iter().enumerate() {
            debug_assert_eq!(e.lists.len(), candidates[e.from].len());
            slots[e.from * n + e.to] = Some(i);
        }
        let (size_bytes, max_degree) = measure(&candidates, &edges);
        Cst {
            candidates,
            edges,
            slots,
            size_bytes,
            max_degree,
        }
    }

    pub fn query_vertex_count(&self) -> usize {
        self.candidates.len()
    }

    /// `C(u)`, sorted ascending.
    pub fn candidates(&self, u: usize) -> &[VertexId] {
        &self.candidates[u]
    }

    pub fn candidate_index(&self, u: usize, v: VertexId) -> Option<usize> {
        self.candidates[u].binary_search(&v).ok()
    }

    /// True when some `C(u)` is empty, i.e. the search space holds nothing.
    pub fn has_empty_candidates(&self) -> bool {
        self.candidates.iter().any(Vec::is_empty)
    }

    pub fn edges(&self) -> &[CstEdge] {
        &self.edges
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&CstEdge> {
        let n = self.candidates.len();
        self.slots[from * n + to].map(|i| &self.edges[i])
    }

    /// `N^u_{to}(v)`; `None` when `(u, to)` is not stored or `v ∉ C(u)`.
    pub fn adjacency(&self, u: usize, to: usize, v: VertexId) -> Option<&[VertexId]> {
        let edge = self.edge(u, to)?;
        let i = self.candidate_index(u, v)?;
        Some(&edge.lists[i])
    }

    /// Edge existence check between `v ∈ C(u)` and `w ∈ C(to)`.
    pub fn has_edge(&self, u: usize, to: usize, v: VertexId, w: VertexId) -> bool {
        self.adjacency(u, to, v)
            .is_some_and(|list| list.binary_search(&w).is_ok())
    }

    /// `|CST|` in bytes.
    pub fn size_bytes(&self) -> usize {
        self.size_bytes
    }

    /// `D_CST`: the longest stored adjacency list.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Size of a CST over `query_vertices` vertices with no candidates.
    pub fn header_bytes(query_vertices: usize) -> usize {
        query_vertices * LIST_HEADER_BYTES
    }

    /// Keeps only `retained[u] ⊆ C(u)` and restricts every adjacency list to
    /// the retained candidates of its target vertex.
    pub fn restrict(&self, retained: &[Vec<VertexId>]) -> Cst {
        assert_eq!(retained.len(), self.candidates.len());
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let keep_to = &retained[e.to];
                let lists = self.candidates[e.from]
                    .iter()
                    .zip(&e.lists)
                    .filter(|(v, _)| retained[e.from].binary_search(v).is_ok())
                    .map(|(_, list)| {
                        list.iter()
                            .copied()
                            .filter(|w| keep_to.binary_search(w).is_ok())
                            .collect()
                    })
                    .collect();
                CstEdge {
                    from: e.from,
                    to: e.to,
                    kind: e.kind,
                    lists,
                }
            })
            .collect();
        let candidates = self
            .candidates
            .iter()
            .zip(retained)
            .map(|(c, r)| {
                c.iter()
                    .copied()
                    .filter(|v| r.binary_search(v).is_ok())
                    .collect()
            })
            .collect();
        Cst::assemble(candidates, edges)
    }

    /// Bottom-up refinement followed by a top-down reachability sweep.
    ///
    /// Removes every candidate with an empty list towards some tree child and
    /// every candidate no surviving parent candidate points at. Returns the
    /// number of removed candidates.
    pub fn refine(&mut self, plan: &QueryPlan) -> usize {
        let n = self.candidates.len();
        let mut retained: Vec<Vec<VertexId>> = self.candidates.clone();

        for &u in plan.bfs_order().iter().rev() {
            let mut pointed_at = vec![plan.parent(u).is_none(); self.candidates[u].len()];
            if let Some(p) = plan.parent(u) {
                let edge = self.edge(p, u).expect("tree edge stored");
                for list in &edge.lists {
                    for &w in list {
                        if let Some(i) = self.candidate_index(u, w) {
                            pointed_at[i] = true;
                        }
                    }
                }
            }
            let keep: Vec<VertexId> = self.candidates[u]
                .iter()
                .enumerate()
                .filter(|&(i, _)| {
                    pointed_at[i]
                        && plan.children(u).iter().all(|&c| {
                            let list = &self.edge(u, c).expect("tree edge stored").lists[i];
                            list.iter().any(|w| retained[c].binary_search(w).is_ok())
                        })
                })
                .map(|(_, &v)| v)
                .collect();
            retained[u] = keep;
        }

        for &u in &plan.bfs_order()[1..] {
            let p = plan.parent(u).unwrap();
            let edge = self.edge(p, u).expect("tree edge stored");
            let mut reachable = vec![false; self.candidates[u].len()];
            for (vp, list) in self.candidates[p].iter().zip(&edge.lists) {
                if retained[p].binary_search(vp).is_err() {
                    continue;
                }
                for &w in list {
                    if let Some(i) = self.candidate_index(u, w) {
                        reachable[i] = true;
                    }
                }
            }
            retained[u].retain(|v| reachable[self.candidate_index(u, *v).unwrap()]);
        }

        let before: usize = self.candidates.iter().map(Vec::len).sum();
        let after: usize = retained.iter().map(Vec::len).sum();
        if before != after {
            *self = self.restrict(&retained);
        }
        debug_assert_eq!(self.candidates.len(), n);
        before - after
    }

    /// Text dump: `C(u): v...` per query vertex, then `N[u->u'][v]: v'...`
    /// per stored edge and candidate.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (u, c) in self.candidates.iter().enumerate() {
            write!(out, "C({u}):").unwrap();
            for v in c {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        for e in &self.edges {
            for (v, list) in self.candidates[e.from].iter().zip(&e.lists) {
                write!(out, "N[{}->{}][{}]:", e.from, e.to, v).unwrap();
                for w in list {
                    write!(out, " {w}").unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}

fn measure(candidates: &[Vec<VertexId>], edges: &[CstEdge]) -> (usize, usize) {
    let mut size = 0;
    for c in candidates {
        size += LIST_HEADER_BYTES + ID_BYTES * c.len();
    }
    let mut max_degree = 0;
    for e in edges {
        for list in &e.lists {
            size += LIST_HEADER_BYTES + ID_BYTES * list.len();
            max_degree = max_degree.max(list.len());
        }
    }
    (size, max_degree)
}

/// Recomputes `(|CST|, D_CST)` from the stored lists.
pub fn cst_metrics(cst: &Cst) -> (usize, usize) {
    measure(&cst.candidates, &cst.edges)
}

fn intersect_sorted(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Builds the CST of `(query, data)` for `plan`: top-down construction over
/// the spanning tree, refinement, then adjacency between non-tree candidate
/// neighbors.
pub fn construct_cst(data: &Graph, query: &Graph, plan: &QueryPlan) -> Cst {
    let n = plan.vertex_count();
    let candidates: Vec<Vec<VertexId>> = (0..n)
        .map(|u| candidates_by_local_features(data, query, u))
        .collect();

    let tree_edges = plan
        .tree_edges()
        .into_iter()
        .map(|(p, u)| CstEdge {
            from: p,
            to: u,
            kind: EdgeKind::Tree,
            lists: candidates[p]
                .iter()
                .map(|&vp| intersect_sorted(data.neighbors(vp), &candidates[u]))
                .collect(),
        })
        .collect();
    let mut cst = Cst::assemble(candidates, tree_edges);
    cst.refine(plan);

    let mut edges = cst.edges;
    for u in 0..n {
        for &un in plan.non_tree_neighbors(u) {
            edges.push(CstEdge {
                from: u,
                to: un,
                kind: EdgeKind::NonTree,
                lists: cst.candidates[u]
                    .iter()
                    .map(|&v| intersect_sorted(data.neighbors(v), &cst.candidates[un]))
                    .collect(),
            });
        }
    }
    Cst::assemble(cst.candidates, edges)
}
