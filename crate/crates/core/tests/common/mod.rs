#![allow(dead_code)]

use fastmatch::gen::{erdos_renyi, random_query, sample_query};
use fastmatch::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Small random instance: `|V(q)|` in 3..=7, `|V(G)|` in 10..=60, 2 to 5
/// labels, mean data degree drawn from {2, 3, 5, 8, 12} with edge probability
/// capped at 0.5. Every other query is cut out of the data graph so it is
/// guaranteed to match.
pub fn random_instance(seed: u64) -> (Graph, Graph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(10..=60);
    let labels = rng.random_range(2..=5);
    let degree = [2.0, 3.0, 5.0, 8.0, 12.0][rng.random_range(0..5)];
    let density = (degree / (n - 1) as f64).min(0.5);
    let qn = rng.random_range(3..=7);
    let data = erdos_renyi(n, density, labels, seed).unwrap();
    if seed.is_multiple_of(2) {
        if let Some(q) = sample_query(&data, qn, 0.6, seed ^ 0xA5) {
            return (data, q);
        }
    }
    let query = random_query(qn, 0.3, labels, seed ^ 0x5A).unwrap();
    (data, query)
}

/// Re-indexes matching-order tuples by query vertex id and sorts them.
pub fn by_query_vertex(embeddings: &[fastmatch::Embedding], order: &[usize]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = embeddings.iter().map(|e| e.by_query_vertex(order)).collect();
    out.sort_unstable();
    out
}
