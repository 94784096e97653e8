//! Run a whole job on the bundled power-law graph at several host shares.

use std::error::Error;

use fastmatch::fixtures::{desk_data, query_shapes};
use fastmatch::{run_job, JobConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let data = desk_data();
    let (name, query) = query_shapes().into_iter().nth(1).expect("nine shapes");
    println!("query {name} on {} vertices / {} edges", data.vertex_count(), data.edge_count());
    println!("{:>6} {:>10} {:>6} {:>6} {:>10} {:>10}", "delta", "embeddings", "host", "kernel", "w_c", "w_f");
    for delta in [0.0, 0.05, 0.1, 0.2, 0.5] {
        let out = run_job(&data, &query, &JobConfig { delta, ..JobConfig::default() })?;
        let s = &out.stats;
        println!(
            "{delta:>6} {:>10} {:>6} {:>6} {:>10} {:>10}",
            s.embeddings, s.host_partitions, s.kernel_partitions, s.w_c, s.w_f
        );
    }
    Ok(())
}
