//! Check the kernel against brute force on a batch of seeded random instances.

use std::error::Error;

use fastmatch::gen::{erdos_renyi, sample_query};
use fastmatch::oracle::brute_force_embeddings;
use fastmatch::{build_query_plan, construct_cst, fast_enumerate, KernelConfig, Variant};

fn main() -> Result<(), Box<dyn Error>> {
    let mut checked = 0;
    for seed in 0..50 {
        let data = erdos_renyi(40, 0.12, 3, seed)?;
        let Some(query) = sample_query(&data, 4, 0.5, seed) else {
            continue;
        };
        let plan = build_query_plan(&query, &data)?;
        let cst = construct_cst(&data, &query, &plan);
        let expected = brute_force_embeddings(&query, &data, plan.order())?;
        for variant in Variant::ALL {
            let cfg = KernelConfig { variant, n_o: 8, ..KernelConfig::default() };
            let run = fast_enumerate(&cst, &plan, &cfg)?;
            assert_eq!(run.embeddings, expected, "seed {seed}, {variant}");
        }
        checked += 1;
    }
    println!("{checked} instances agree with brute force");
    Ok(())
}
