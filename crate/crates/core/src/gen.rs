//! Seeded random labeled graphs and queries.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, VertexId};

/// How vertex labels are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LabelDist {
    Uniform,
    /// Label `l` has weight `1 / (l + 1)^s`.
    Zipf(f64),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw_labels(n: usize, labels: usize, dist: LabelDist, rng: &mut ChaCha8Rng) -> Result<Vec<Label>> {
    if labels == 0 {
        return Err(Error::InvalidConfig("label count must be at least 1".into()));
    }
    let weights: Vec<f64> = (0..labels)
        .map(|l| match dist {
            LabelDist::Uniform => 1.0,
            LabelDist::Zipf(s) => 1.0 / ((l + 1) as f64).powf(s),
        })
        .collect();
    let index = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidConfig(format!("label distribution: {e}")))?;
    Ok((0..n).map(|_| index.sample(rng) as Label).collect())
}

/// `G(n, p)` with uniformly drawn labels.
pub fn erdos_renyi(n: usize, p: f64, labels: usize, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!("edge probability must lie in [0, 1], got {p}")));
    }
    let mut rng = rng(seed);
    let vertex_labels = draw_labels(n, labels, LabelDist::Uniform, &mut rng)?;
    let mut edges = Vec::new();
    for a in 0..n as VertexId {
        for b in a + 1..n as VertexId {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(vertex_labels, &edges)
}

/// Chung-Lu graph whose expected degrees follow a power law with the given
/// exponent (`> 2`) and mean `avg_degree`.
pub fn power_law(
    n: usize,
    avg_degree: f64,
    exponent: f64,
    labels: usize,
    label_dist: LabelDist,
    seed: u64,
) -> Result<Graph> {
    if exponent <= 2.0 || !exponent.is_finite() {
        return Err(Error::InvalidConfig(format!("power-law exponent must exceed 2, got {exponent}")));
    }
    if !(avg_degree > 0.0 && avg_degree.is_finite()) {
        return Err(Error::InvalidConfig(format!("average degree must be positive, got {avg_degree}")));
    }
    let mut rng = rng(seed);
    let vertex_labels = draw_labels(n, labels, label_dist, &mut rng)?;
    let raw: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-1.0 / (exponent - 1.0))).collect();
    let scale = avg_degree * n as f64 / raw.iter().sum::<f64>().max(f64::MIN_POSITIVE);
    let weight: Vec<f64> = raw.iter().map(|w| w * scale).collect();
    let total: f64 = weight.iter().sum();

    // shuffle so that vertex id does not predict degree
    let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
    ids.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = (weight[i] * weight[j] / total).min(1.0);
            if rng.random_bool(p) {
                let (a, b) = (ids[i], ids[j]);
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    Graph::from_edges(vertex_labels, &edges)
}

/// Random connected query with `n` vertices: a random spanning tree plus each
/// remaining pair independently with probability `extra`.
pub fn random_query(n: usize, extra: f64, labels: usize, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&extra) {
        return Err(Error::InvalidConfig(format!("edge probability must lie in [0, 1], got {extra}")));
    }
    let mut rng = rng(seed);
    let vertex_labels = draw_labels(n, labels, LabelDist::Uniform, &mut rng)?;
    let mut adjacent = vec![false; n * n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        adjacent[u * n + v] = true;
        edges.push((u as VertexId, v as VertexId));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !adjacent[a * n + b] && rng.random_bool(extra) {
                edges.push((a as VertexId, b as VertexId));
            }
        }
    }
    Graph::from_edges(vertex_labels, &edges)
}

/// Connected query of `n` vertices cut out of `data` by a randomized
/// breadth-first expansion, so it has at least one embedding. Each induced
/// edge outside the expansion tree is kept with probability `keep`. Returns
/// `None` if the seed vertex's component is smaller than `n`.
pub fn sample_query(data: &Graph, n: usize, keep: f64, seed: u64) -> Option<Graph> {
    if n == 0 || data.vertex_count() == 0 {
        return None;
    }
    let mut rng = rng(seed);
    let start = rng.random_range(0..data.vertex_count()) as VertexId;
    let mut picked = vec![start];
    let mut tree = Vec::new();
    let mut frontier = vec![start];
    while picked.len() < n {
        if frontier.is_empty() {
            return None;
        }
        let i = rng.random_range(0..frontier.len());
        let v = frontier[i];
        let fresh: Vec<VertexId> = data.neighbors(v).iter().copied().filter(|w| !picked.contains(w)).collect();
        if fresh.is_empty() {
            frontier.swap_remove(i);
            continue;
        }
        let w = *fresh.choose(&mut rng).expect("non-empty");
        tree.push((v, w));
        picked.push(w);
        frontier.push(w);
    }
    let local = |v: VertexId| picked.iter().position(|&x| x == v).unwrap() as VertexId;
    let mut edges: Vec<(VertexId, VertexId)> = tree.iter().map(|&(a, b)| (local(a), local(b))).collect();
    for (i, &a) in picked.iter().enumerate() {
        for &b in &picked[i + 1..] {
            let in_tree = tree.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
            if !in_tree && data.has_edge(a, b) && rng.random_bool(keep.clamp(0.0, 1.0)) {
                edges.push((local(a), local(b)));
            }
        }
    }
    let labels = picked.iter().map(|&v| data.label(v)).collect();
    Some(Graph::from_edges(labels, &edges).expect("sampled edges are simple"))
}
