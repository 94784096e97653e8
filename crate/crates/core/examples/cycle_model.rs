//! Compare the analytic cycle estimates with the event-driven simulation.

use std::error::Error;

use fastmatch::fixtures::{desk_data, query_shapes};
use fastmatch::kernel::{cycle_estimate, simulate_dataflow_schedule, DEFAULT_DRAM_RATIO};
use fastmatch::{run_job, JobConfig, Variant};

fn main() -> Result<(), Box<dyn Error>> {
    let data = desk_data();
    let cfg = JobConfig { delta: 0.0, ..JobConfig::default() };
    let (name, query) = query_shapes().into_iter().next().expect("nine shapes");
    let out = run_job(&data, &query, &cfg)?;
    println!("{name}: N = {}, M = {}, {} rounds", out.model.n_total, out.model.m_total, out.trace.len());

    for (label, model) in [("on-chip", out.model), ("dram", out.model.scaled(DEFAULT_DRAM_RATIO))] {
        for variant in Variant::ALL {
            let est = cycle_estimate(&model, variant, cfg.kernel.n_o);
            let sim = simulate_dataflow_schedule(&out.trace, variant, &model);
            println!(
                "{label:>7} {variant:>5}: estimate {est:>9.0}, simulated {:>9.0}, fill slack {:>9.0}",
                sim.makespan, sim.fill_slack
            );
        }
    }
    Ok(())
}
