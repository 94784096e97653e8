//! Drive the enumeration kernel round by round and print its trace.

use std::error::Error;

use fastmatch::fixtures::running_example;
use fastmatch::kernel::cycle_estimate;
use fastmatch::{build_query_plan, construct_cst, fast_enumerate, KernelConfig, Variant};

fn main() -> Result<(), Box<dyn Error>> {
    let (data, query) = running_example();
    let plan = build_query_plan(&query, &data)?;
    let cst = construct_cst(&data, &query, &plan);
    let cfg = KernelConfig { n_o: 2, ..KernelConfig::default() };
    let run = fast_enumerate(&cst, &plan, &cfg)?;

    println!("round depth p_o t_v t_n accepted");
    for r in &run.trace {
        println!("{:>5} {:>5} {:>3} {:>3} {:>3} {:>8}", r.round, r.depth, r.outputs, r.visited_tasks, r.edge_tasks, r.accepted);
    }
    for e in &run.embeddings {
        println!("embedding {:?}", e.by_query_vertex(plan.order()));
    }
    println!("peak level occupancy {} of {}", run.peak_occupancy, cfg.n_o);
    for variant in Variant::ALL {
        println!("{variant:>5}: {:.0} cycles", cycle_estimate(&run.model, variant, cfg.n_o));
    }
    Ok(())
}
