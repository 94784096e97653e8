//! BFS spanning tree of the query plus the matching order.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{candidates_by_local_features, Graph, VertexId};

/// Spanning tree `t_q` of a query, its non-tree edges, and a matching order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryPlan {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    non_tree_neighbors: Vec<Vec<usize>>,
    bfs_order: Vec<usize>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl QueryPlan {
    /// BFS tree of `query` rooted at `root`, neighbors visited in ascending id
    /// order. The matching order defaults to the BFS order.
    pub fn bfs(query: &Graph, root: usize) -> Result<Self> {
        let n = query.vertex_count();
        if n < 2 {
            return Err(Error::QueryTooSmall(n));
        }
        if root >= n {
            return Err(Error::InvalidOrder(format!("root u{root} out of range")));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut bfs_order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            bfs_order.push(u);
            for &w in query.neighbors(u as VertexId) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        if bfs_order.len() != n {
            return Err(Error::DisconnectedQuery);
        }
        let mut non_tree_neighbors = vec![Vec::new(); n];
        for (a, b) in query.edges() {
            let (a, b) = (a as usize, b as usize);
            if parent[a] != Some(b) && parent[b] != Some(a) {
                non_tree_neighbors[a].push(b);
                non_tree_neighbors[b].push(a);
            }
        }
        for list in &mut non_tree_neighbors {
            list.sort_unstable();
        }
        let position = inverse(&bfs_order);
        Ok(QueryPlan {
            root,
            parent,
            children,
            non_tree_neighbors,
            order: bfs_order.clone(),
            bfs_order,
            position,
        })
    }

    /// Replaces the matching order. The order must start at the root and
    /// place every vertex after its tree parent, which also makes it connected.
    pub fn with_order(mut self, order: Vec<usize>) -> Result<Self> {
        let n = self.vertex_count();
        if order.len() != n {
            return Err(Error::InvalidOrder(format!(
                "expected {n} vertices, got {}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &u in &order {
            if u >= n || std::mem::replace(&mut seen[u], true) {
                return Err(Error::InvalidOrder(format!("not a permutation: {order:?}")));
            }
        }
        if order[0] != self.root {
            return Err(Error::InvalidOrder(format!(
                "order must start at the root u{}",
                self.root
            )));
        }
        let position = inverse(&order);
        for &u in &order[1..] {
            let p = self.parent[u].expect("non-root vertex has a parent");
            if position[p] > position[u] {
                return Err(Error::InvalidOrder(format!(
                    "u{u} is placed before its tree parent u{p}"
                )));
            }
        }
        self.order = order;
        self.position = position;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        self.parent[u]
    }

    pub fn children(&self, u: usize) -> &[usize] {
        &self.children[u]
    }

    pub fn is_leaf(&self, u: usize) -> bool {
        self.children[u].is_empty()
    }

    pub fn non_tree_neighbors(&self, u: usize) -> &[usize] {
        &self.non_tree_neighbors[u]
    }

    /// Non-tree neighbors of `u` that come before it in the matching order.
    pub fn earlier_non_tree_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let pos = self.position[u];
        self.non_tree_neighbors[u]
            .iter()
            .copied()
            .filter(move |&w| self.position[w] < pos)
    }

    /// Vertices in BFS (top-down) order of the spanning tree.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs_order
    }

    /// The matching order `O`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Index of `u` in the matching order.
    pub fn position(&self, u: usize) -> usize {
        self.position[u]
    }

    /// Tree edges as `(parent, child)`, in BFS order of the child.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.bfs_order[1..]
            .iter()
            .map(|&u| (self.parent[u].unwrap(), u))
            .collect()
    }

    /// Non-tree edges with `a < b`.
    pub fn non_tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.vertex_count())
            .flat_map(|a| {
                self.non_tree_neighbors[a]
                    .iter()
                    .filter(move |&&b| a < b)
                    .map(move |&b| (a, b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Root-to-leaf paths of the spanning tree, leaves in BFS order.
    pub fn root_to_leaf_paths(&self) -> Vec<Vec<usize>> {
        self.bfs_order
            .iter()
            .filter(|&&u| self.is_leaf(u))
            .map(|&leaf| {
                let mut path = vec![leaf];
                let mut cur = leaf;
                while let Some(p) = self.parent[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                path
            })
            .collect()
    }
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &u) in order.iter().enumerate() {
        pos[u] = i;
    }
    pos
}

/// Picks the root, builds its BFS tree and derives the path-based matching order.
///
/// The root minimizes `|candidates(u)| / d_q(u)` (ties: smallest id). Root-to-leaf
/// paths are ordered by the product of their candidate counts (ties:
/// lexicographic vertex ids) and concatenated, skipping already placed vertices.
pub fn build_query_plan(query: &Graph, data: &Graph) -> Result<QueryPlan> {
    let n = query.vertex_count();
    if n < 2 {
        return Err(Error::QueryTooSmall(n));
    }
    if !query.is_connected() {
        return Err(Error::DisconnectedQuery);
    }
    let counts: Vec<u128> = (0..n)
        .map(|u| candidates_by_local_features(data, query, u).len() as u128)
        .collect();

    let mut root = 0;
    for u in 1..n {
        // counts[u] / d(u) < counts[root] / d(root)
        let lhs = counts[u] * query.degree(root as VertexId) as u128;
        let rhs = counts[root] * query.degree(u as VertexId) as u128;
        if lhs < rhs {
            root = u;
        }
    }

    let plan = QueryPlan::bfs(query, root)?;
    let mut paths: Vec<(u128, Vec<usize>)> = plan
        .root_to_leaf_paths()
        .into_iter()
        .map(|p| {
            let weight = p
                .iter()
                .fold(1u128, |acc, &u| acc.saturating_mul(counts[u]));
            (weight, p)
        })
        .collect();
    paths.sort();

    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for (_, path) in paths {
        for u in path {
            if !std::mem::replace(&mut placed[u], true) {
                order.push(u);
            }
        }
    }
    plan.with_order(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(vec![0, 0, 0], &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn triangle_has_one_non_tree_edge() {
        for root in 0..3 {
            let plan = QueryPlan::bfs(&triangle(), root).unwrap();
            assert_eq!(plan.tree_edges().len(), 2);
            assert_eq!(plan.non_tree_edges().len(), 1);
        }
    }

    #[test]
    fn rejects_disconnected_and_tiny_queries() {
        let data = triangle();
        let split = Graph::from_edges(vec![0, 0, 0, 0], &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            build_query_plan(&split, &data),
            Err(Error::DisconnectedQuery)
        ));
        let single = Graph::from_edges(vec![0], &[]).unwrap();
        assert!(matches!(
            build_query_plan(&single, &data),
            Err(Error::QueryTooSmall(1))
        ));
    }

    #[test]
    fn custom_order_must_respect_tree_parents() {
        // path 0-1-2 rooted at 0
        let q = Graph::from_edges(vec![0, 0, 0], &[(0, 1), (1, 2)]).unwrap();
        let plan = QueryPlan::bfs(&q, 0).unwrap();
        assert!(plan.clone().with_order(vec![0, 2, 1]).is_err());
        assert!(plan.clone().with_order(vec![1, 0, 2]).is_err());
        assert!(plan.clone().with_order(vec![0, 1, 1]).is_err());
        assert!(plan.with_order(vec![0, 1, 2]).is_ok());
    }

    #[test]
    fn earlier_non_tree_neighbors_follow_order() {
        let plan = QueryPlan::bfs(&triangle(), 0).unwrap();
        assert_eq!(plan.earlier_non_tree_neighbors(1).count(), 0);
        assert_eq!(plan.earlier_non_tree_neighbors(2).collect::<Vec<_>>(), vec![1]);
    }
}
