//! Brute-force ground truth for testing: embeddings straight from the
//! definition of subgraph isomorphism, and explicit tree-walk enumeration on a
//! CST. Nothing here uses candidate filtering or the kernel.

use crate::cst::Cst;
use crate::error::{Error, Result};
use crate::graph::{Embedding, Graph, VertexId};
use crate::plan::QueryPlan;

pub const MAX_QUERY_VERTICES: usize = 8;
pub const MAX_DATA_VERTICES: usize = 200;
/// Largest number of label-respecting tuples the flat oracle will scan.
pub const MAX_FLAT_TUPLES: u128 = 20_000_000;
/// Largest number of tree walks enumerated one by one.
pub const MAX_TREE_WALKS: u64 = 50_000_000;

fn guard(query_vertices: usize, data_vertices: usize) -> Result<()> {
    if query_vertices > MAX_QUERY_VERTICES || data_vertices > MAX_DATA_VERTICES {
        return Err(Error::OracleGuard {
            query_vertices,
            data_vertices,
        });
    }
    Ok(())
}

fn check_order(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&u| u >= n || std::mem::replace(&mut seen[u], true)) {
        return Err(Error::InvalidOrder(format!(
            "{order:?} is not a permutation of 0..{n}"
        )));
    }
    Ok(())
}

/// Every injective, label- and edge-preserving mapping of `query` into
/// `data`, as tuples in `order`, sorted.
pub fn brute_force_embeddings(query: &Graph, data: &Graph, order: &[usize]) -> Result<Vec<Embedding>> {
    guard(query.vertex_count(), data.vertex_count())?;
    let n = query.vertex_count();
    check_order(order, n)?;
    let mut image = vec![None::<VertexId>; n];
    let mut used = vec![false; data.vertex_count()];
    let mut out = Vec::new();
    extend(query, data, order, 0, &mut image, &mut used, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn extend(
    query: &Graph,
    data: &Graph,
    order: &[usize],
    pos: usize,
    image: &mut [Option<VertexId>],
    used: &mut [bool],
    out: &mut Vec<Embedding>,
) {
    if pos == order.len() {
        out.push(Embedding(order.iter().map(|&u| image[u].unwrap()).collect()));
        return;
    }
    let u = order[pos];
    for v in 0..data.vertex_count() as VertexId {
        if used[v as usize] || data.label(v) != query.label(u as VertexId) {
            continue;
        }
        let consistent = query.neighbors(u as VertexId).iter().all(|&w| match image[w as usize] {
            Some(x) => data.has_edge(v, x),
            None => true,
        });
        if !consistent {
            continue;
        }
        image[u] = Some(v);
        used[v as usize] = true;
        extend(query, data, order, pos + 1, image, used, out);
        used[v as usize] = false;
        image[u] = None;
    }
}

/// Same answer as [`brute_force_embeddings`] by a different route: an
/// odometer over all label-respecting tuples, keeping the injective ones that
/// preserve every query edge.
pub fn brute_force_embeddings_flat(query: &Graph, data: &Graph, order: &[usize]) -> Result<Vec<Embedding>> {
    guard(query.vertex_count(), data.vertex_count())?;
    let n = query.vertex_count();
    check_order(order, n)?;
    let pools: Vec<Vec<VertexId>> = order
        .iter()
        .map(|&u| {
            data.vertices()
                .filter(|&v| data.label(v) == query.label(u as VertexId))
                .collect()
        })
        .collect();
    let tuples = pools.iter().map(|p| p.len() as u128).product::<u128>();
    if tuples > MAX_FLAT_TUPLES {
        return Err(Error::OracleGuard {
            query_vertices: n,
            data_vertices: data.vertex_count(),
        });
    }
    if pools.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let query_edges: Vec<(usize, usize)> = query
        .edges()
        .map(|(a, b)| (position(order, a as usize), position(order, b as usize)))
        .collect();

    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let tuple: Vec<VertexId> = digits.iter().zip(&pools).map(|(&d, p)| p[d]).collect();
        let mut sorted = tuple.clone();
        sorted.sort_unstable();
        let injective = sorted.windows(2).all(|w| w[0] != w[1]);
        if injective && query_edges.iter().all(|&(a, b)| data.has_edge(tuple[a], tuple[b])) {
            out.push(Embedding(tuple));
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort_unstable();
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < pools[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn position(order: &[usize], u: usize) -> usize {
    order.iter().position(|&x| x == u).expect("order is a permutation")
}

/// Counts assignments that pick one candidate per query vertex such that
/// every tree child's image lies in its parent image's tree adjacency list.
/// Non-tree edges and injectivity are ignored.
pub fn brute_force_tree_walks(cst: &Cst, plan: &QueryPlan) -> Result<u64> {
    let n = plan.vertex_count();
    let widest = (0..n).map(|u| cst.candidates(u).len()).max().unwrap_or(0);
    guard(n, widest)?;
    let bfs = plan.bfs_order();
    let mut image = vec![0 as VertexId; n];
    let mut count = 0u64;
    for &v in cst.candidates(plan.root()) {
        image[plan.root()] = v;
        walk(cst, plan, bfs, 1, &mut image, &mut count)?;
    }
    Ok(count)
}

fn walk(
    cst: &Cst,
    plan: &QueryPlan,
    bfs: &[usize],
    pos: usize,
    image: &mut [VertexId],
    count: &mut u64,
) -> Result<()> {
    if pos == bfs.len() {
        *count += 1;
        if *count > MAX_TREE_WALKS {
            return Err(Error::OracleGuard {
                query_vertices: plan.vertex_count(),
                data_vertices: 0,
            });
        }
        return Ok(());
    }
    let u = bfs[pos];
    let p = plan.parent(u).expect("non-root vertex has a parent");
    let list = cst.adjacency(p, u, image[p]).unwrap_or(&[]);
    for &v in list {
        image[u] = v;
        walk(cst, plan, bfs, pos + 1, image, count)?;
    }
    Ok(())
}
