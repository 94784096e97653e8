//! Generate a skewed power-law graph, save it and load it back.

use std::error::Error;

use fastmatch::gen::{power_law, LabelDist};
use fastmatch::{load_graph, save_graph};

fn main() -> Result<(), Box<dyn Error>> {
    let graph = power_law(500, 6.0, 2.8, 8, LabelDist::Zipf(1.0), 42)?;
    let path = std::env::temp_dir().join("fastmatch_power_law.graph");
    save_graph(&graph, &path)?;
    let loaded = load_graph(&path)?;
    assert_eq!(loaded.to_text(), graph.to_text());

    let max_degree = (0..loaded.vertex_count() as u32).map(|v| loaded.neighbors(v).len()).max().unwrap_or(0);
    let mut per_label = vec![0usize; 8];
    for &l in loaded.labels() {
        per_label[l as usize] += 1;
    }
    println!("{} vertices, {} edges, max degree {max_degree}", loaded.vertex_count(), loaded.edge_count());
    println!("vertices per label {per_label:?}");
    println!("written to {}", path.display());
    Ok(())
}
