//! Split a candidate index under tight budgets and show every piece.

use std::error::Error;

use fastmatch::fixtures::{workload_example, workload_example_plan};
use fastmatch::partition::compute_partition_factor;
use fastmatch::{construct_cst, estimate_workload, host_match, partition_cst, PartitionConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let (data, query) = workload_example();
    let plan = workload_example_plan();
    let cst = construct_cst(&data, &query, &plan);
    println!("whole index: {} bytes, longest list {}", cst.size_bytes(), cst.max_degree());

    let cfg = PartitionConfig {
        delta_s: cst.size_bytes() - 1,
        delta_d: 3,
        ..PartitionConfig::default()
    };
    println!("partition factor at the root: {}", compute_partition_factor(&cst, &cfg, plan.root()));

    let mut pieces = Vec::new();
    partition_cst(cst, &plan, 0, &cfg, &mut |piece| {
        pieces.push(piece);
        Ok(())
    })?;
    for (i, piece) in pieces.iter().enumerate() {
        println!(
            "piece {i}: C(u0) = {:?}, {} bytes, workload {}, {} embeddings",
            piece.candidates(plan.root()),
            piece.size_bytes(),
            estimate_workload(piece, &plan).total(),
            host_match(piece, &plan).len()
        );
    }
    Ok(())
}
