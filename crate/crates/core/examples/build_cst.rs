//! Build the candidate index for the bundled running example and print it.

use std::error::Error;

use fastmatch::fixtures::running_example;
use fastmatch::{build_query_plan, construct_cst};

fn main() -> Result<(), Box<dyn Error>> {
    let (data, query) = running_example();
    let plan = build_query_plan(&query, &data)?;
    println!("root u{}, order {:?}", plan.root(), plan.order());
    println!("tree edges {:?}, non-tree edges {:?}", plan.tree_edges(), plan.non_tree_edges());

    let cst = construct_cst(&data, &query, &plan);
    print!("{}", cst.dump());
    println!("{} bytes, longest list {}", cst.size_bytes(), cst.max_degree());
    Ok(())
}
