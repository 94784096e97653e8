//! Bundled graphs: the two small worked examples, nine query shapes and a
//! 3000-vertex, 11-label power-law data graph.
//!
//! Worked-example data vertices are numbered from zero, so the example's
//! `v_i` has id `i - 1`. Labels `A, B, C, D` are `0, 1, 2, 3`.

use std::path::PathBuf;

use crate::graph::Graph;
use crate::plan::QueryPlan;

pub const RUNNING_EXAMPLE_DATA: &str = include_str!("../fixtures/running_example_data.graph");
pub const RUNNING_EXAMPLE_QUERY: &str = include_str!("../fixtures/running_example_query.graph");
/// Expected dump of the running example's CST.
pub const RUNNING_EXAMPLE_CST: &str = include_str!("../fixtures/running_example_cst.txt");
pub const WORKLOAD_EXAMPLE_DATA: &str = include_str!("../fixtures/workload_example_data.graph");
pub const WORKLOAD_EXAMPLE_QUERY: &str = include_str!("../fixtures/workload_example_query.graph");
/// Generated with `fastmatch gen --n 3000 --exponent 2.8 --avg-degree 6
/// --labels 11 --label-skew 1.0 --seed 42`.
pub const DESK_3K: &str = include_str!("../fixtures/desk_3k.graph");

pub const QUERY_SHAPES: [(&str, &str); 9] = [
    ("q0", include_str!("../fixtures/q0.graph")),
    ("q1", include_str!("../fixtures/q1.graph")),
    ("q2", include_str!("../fixtures/q2.graph")),
    ("q3", include_str!("../fixtures/q3.graph")),
    ("q4", include_str!("../fixtures/q4.graph")),
    ("q5", include_str!("../fixtures/q5.graph")),
    ("q6", include_str!("../fixtures/q6.graph")),
    ("q7", include_str!("../fixtures/q7.graph")),
    ("q8", include_str!("../fixtures/q8.graph")),
];

fn parse(text: &str) -> Graph {
    Graph::parse(text).expect("bundled fixture parses")
}

/// Running example `(data, query)`: four query vertices, ten data vertices,
/// two embeddings.
pub fn running_example() -> (Graph, Graph) {
    (parse(RUNNING_EXAMPLE_DATA), parse(RUNNING_EXAMPLE_QUERY))
}

/// Workload and partitioning example `(data, query)`.
pub fn workload_example() -> (Graph, Graph) {
    (parse(WORKLOAD_EXAMPLE_DATA), parse(WORKLOAD_EXAMPLE_QUERY))
}

/// BFS plan of the [`workload_example`] query rooted at `u0` with matching order
/// `(u0, u1, u2, u3)`.
pub fn workload_example_plan() -> QueryPlan {
    let (_, query) = workload_example();
    QueryPlan::bfs(&query, 0)
        .and_then(|p| p.with_order(vec![0, 1, 2, 3]))
        .expect("valid order")
}

pub fn query_shapes() -> Vec<(&'static str, Graph)> {
    QUERY_SHAPES.iter().map(|&(name, text)| (name, parse(text))).collect()
}

pub fn desk_data() -> Graph {
    parse(DESK_3K)
}

/// On-disk location of a bundled fixture file.
pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}
