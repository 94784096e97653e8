//! The two small bundled examples, checked set by set.

mod common;

use fastmatch::cst::construct_cst;
use fastmatch::fixtures::{self, running_example, workload_example, workload_example_plan};
use fastmatch::kernel::{
    cycle_estimate, fast_enumerate, generate, simulate_dataflow_schedule, synchronize, validate_edges,
    validate_visited, CycleModel, KernelConfig, PartialResult, ResultBuffer, Variant,
};
use fastmatch::oracle::{brute_force_embeddings, brute_force_tree_walks};
use fastmatch::partition::{compute_partition_factor, partition_cst, project_cst, PartitionConfig};
use fastmatch::plan::build_query_plan;
use fastmatch::scheduler::{host_match, run_job, JobConfig, SchedulerState};
use fastmatch::workload::estimate_workload;
use fastmatch::{Embedding, Graph};

/// `v(i)` is the id of the example's data vertex `v_i`.
const fn v(i: u32) -> u32 {
    i - 1
}

fn emb(ids: &[u32]) -> Embedding {
    Embedding(ids.iter().map(|&i| v(i)).collect())
}

#[test]
fn running_example_plan() {
    let (data, query) = running_example();
    let plan = build_query_plan(&query, &data).unwrap();
    assert_eq!(plan.root(), 0);
    assert_eq!(plan.tree_edges(), vec![(0, 1), (0, 2), (2, 3)]);
    assert_eq!(plan.non_tree_edges(), vec![(1, 2)]);
    assert_eq!(plan.order(), &[0, 1, 2, 3]);
}

#[test]
fn running_example_cst_sets() {
    let (data, query) = running_example();
    let plan = build_query_plan(&query, &data).unwrap();
    let cst = construct_cst(&data, &query, &plan);
    assert_eq!(cst.candidates(0), &[v(1), v(2)]);
    assert_eq!(cst.candidates(1), &[v(4), v(6)]);
    assert_eq!(cst.candidates(2), &[v(3), v(5), v(7)]);
    assert_eq!(cst.candidates(3), &[v(8), v(9), v(10)]);
    assert_eq!(cst.adjacency(1, 2, v(6)).unwrap(), &[v(5), v(7)]);
    assert_eq!(cst.adjacency(2, 3, v(3)).unwrap(), &[v(9)]);
    assert_eq!(cst.dump(), fixtures::RUNNING_EXAMPLE_CST);
}

#[test]
fn running_example_has_two_embeddings_everywhere() {
    let (data, query) = running_example();
    let plan = build_query_plan(&query, &data).unwrap();
    let cst = construct_cst(&data, &query, &plan);
    let expected = vec![emb(&[1, 4, 3, 9]), emb(&[2, 6, 5, 10])];

    assert_eq!(brute_force_embeddings(&query, &data, plan.order()).unwrap(), expected);
    assert_eq!(host_match(&cst, &plan), expected);
    for variant in Variant::ALL {
        for n_o in [1, 2, 1024] {
            let cfg = KernelConfig {
                variant,
                n_o,
                ..KernelConfig::default()
            };
            let run = fast_enumerate(&cst, &plan, &cfg).unwrap();
            assert_eq!(run.embeddings, expected, "{variant} with N_o = {n_o}");
        }
    }
}

#[test]
fn running_example_job_at_zero_and_full_share() {
    let (data, query) = running_example();
    let kernel_only = run_job(&data, &query, &JobConfig { delta: 0.0, ..JobConfig::default() }).unwrap();
    assert_eq!(kernel_only.stats.embeddings, 2);
    assert_eq!(kernel_only.stats.w_c, 0);
    assert_eq!(kernel_only.stats.host_partitions, 0);

    // a lone CST never satisfies w < δ·w, even at δ = 1
    let full = run_job(&data, &query, &JobConfig { delta: 1.0, ..JobConfig::default() }).unwrap();
    assert_eq!(full.embeddings, kernel_only.embeddings);
    assert_eq!(full.stats.partitions, 1);
}

#[test]
fn workload_example_counts() {
    let (data, query) = workload_example();
    let plan = workload_example_plan();
    let cst = construct_cst(&data, &query, &plan);
    let table = estimate_workload(&cst, &plan);
    assert_eq!(table.count(&cst, 0, v(1)), Some(4));
    assert_eq!(table.count(&cst, 0, v(2)), Some(3));
    assert_eq!(table.total(), 7);
    assert_eq!(brute_force_tree_walks(&cst, &plan).unwrap(), 7);
    assert_eq!(cst.max_degree(), 3);
}

#[test]
fn workload_example_projection() {
    let (data, query) = workload_example();
    let plan = workload_example_plan();
    let cst = construct_cst(&data, &query, &plan);

    let left = project_cst(&cst, &plan, 0, &[v(1)]);
    assert_eq!(left.candidates(0), &[v(1)]);
    assert_eq!(left.candidates(1), &[v(3), v(5)]);
    assert_eq!(left.candidates(2), &[v(6), v(8)]);
    assert_eq!(left.candidates(3), &[v(9), v(10)]);

    let right = project_cst(&cst, &plan, 0, &[v(2)]);
    assert_eq!(right.candidates(1), &[v(4)]);
    assert_eq!(right.candidates(3), &[v(10)]);

    assert_eq!(project_cst(&cst, &plan, 0, cst.candidates(0)), cst);
}

#[test]
fn workload_example_splits_in_two() {
    let (data, query) = workload_example();
    let plan = workload_example_plan();
    let cst = construct_cst(&data, &query, &plan);
    let cfg = PartitionConfig {
        delta_s: cst.size_bytes() - 1,
        delta_d: 3,
        ..PartitionConfig::default()
    };
    assert_eq!(compute_partition_factor(&cst, &cfg, 0), 2);
    let mut parts = Vec::new();
    let count = partition_cst(cst.clone(), &plan, 0, &cfg, &mut |c| {
        parts.push(c);
        Ok(())
    })
    .unwrap();
    assert_eq!(count, 2);
    assert_eq!(parts[0].candidates(0), &[v(1)]);
    assert_eq!(parts[1].candidates(0), &[v(2)]);
    assert_eq!(parts[0].candidates(3), &[v(9), v(10)]);

    let roomy = PartitionConfig::default();
    assert_eq!(compute_partition_factor(&cst, &roomy, 0), 1);
    let mut untouched = Vec::new();
    partition_cst(cst.clone(), &plan, 0, &roomy, &mut |c| {
        untouched.push(c);
        Ok(())
    })
    .unwrap();
    assert_eq!(untouched, vec![cst]);
}

#[test]
fn workload_example_batch_bits() {
    let (data, query) = workload_example();
    let plan = workload_example_plan();
    let cst = construct_cst(&data, &query, &plan);
    let mut buffer = ResultBuffer::new(4, 1024);
    buffer.push(PartialResult::new(vec![v(1), v(3)]));
    buffer.push(PartialResult::new(vec![v(1), v(5)]));

    let mut batch = generate(&mut buffer, &cst, &plan).unwrap();
    let outputs: Vec<&[u32]> = batch.outputs.iter().map(|p| p.vertices()).collect();
    assert_eq!(
        outputs,
        vec![
            &[v(1), v(3), v(6)][..],
            &[v(1), v(3), v(8)],
            &[v(1), v(5), v(6)],
            &[v(1), v(5), v(8)],
        ]
    );
    let tasks: Vec<(u32, u32, usize)> = batch.edge_tasks.iter().map(|t| (t.v_n, t.v, t.output)).collect();
    assert_eq!(
        tasks,
        vec![(v(3), v(6), 0), (v(3), v(8), 1), (v(5), v(6), 2), (v(5), v(8), 3)]
    );

    batch.visited_bits = validate_visited(&batch.visited_tasks, &batch.sources);
    batch.edge_bits = validate_edges(&cst, batch.vertex, &batch.edge_tasks, batch.outputs.len());
    assert_eq!(batch.visited_bits, vec![true; 4]);
    assert_eq!(batch.edge_bits, vec![true, false, false, true]);

    let mut results = Vec::new();
    assert_eq!(synchronize(batch, &mut buffer, &mut results, 4), 2);
    assert!(results.is_empty());
    assert_eq!(buffer.len(3), 2);
}

#[test]
fn revisiting_a_mapped_vertex_clears_the_visited_bit() {
    let tasks = [fastmatch::kernel::VisitedTask { v: 7, source: 0 }];
    assert_eq!(validate_visited(&tasks, &[PartialResult::new(vec![7, 3])]), vec![false]);
    assert_eq!(validate_visited(&tasks, &[PartialResult::new(vec![1, 3])]), vec![true]);
}

#[test]
fn empty_edge_task_list_passes_every_output() {
    let (data, query) = workload_example();
    let plan = workload_example_plan();
    let cst = construct_cst(&data, &query, &plan);
    assert_eq!(validate_edges(&cst, 2, &[], 3), vec![true; 3]);
}

#[test]
fn straight_chain_has_one_embedding_and_no_edge_tasks() {
    let data = Graph::from_edges(vec![0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
    let query = Graph::from_edges(vec![0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
    let plan = build_query_plan(&query, &data).unwrap();
    let cst = construct_cst(&data, &query, &plan);
    let run = fast_enumerate(&cst, &plan, &KernelConfig::default()).unwrap();
    assert_eq!(run.embeddings.len(), 1);
    assert_eq!(run.model.m_total, 0);
    assert_eq!(brute_force_tree_walks(&cst, &plan).unwrap(), cst.candidates(plan.root()).len() as u64);
}

#[test]
fn cycle_formulas_on_round_numbers() {
    let model = CycleModel::new([5.0; 6]).unwrap().with_counters(100, 100);
    assert_eq!(model.l_f(), 20.0);
    assert_eq!(model.l_t(), 10.0);
    assert_eq!(cycle_estimate(&model, Variant::Basic, 1000), 603.0);
    assert_eq!(cycle_estimate(&model, Variant::Task, 1000), 300.0);
    assert_eq!(cycle_estimate(&model, Variant::Sep, 1000), 200.0);
}

#[test]
fn running_example_simulated_variants_are_ordered() {
    let (data, query) = running_example();
    let plan = build_query_plan(&query, &data).unwrap();
    let cst = construct_cst(&data, &query, &plan);
    let run = fast_enumerate(&cst, &plan, &KernelConfig::default()).unwrap();
    let sim = |v| simulate_dataflow_schedule(&run.trace, v, &run.model).makespan;
    assert!(sim(Variant::Sep) <= sim(Variant::Task));
    assert!(sim(Variant::Task) <= sim(Variant::Basic));
}

#[test]
fn routing_examples() {
    let (data, query) = workload_example();
    let plan = workload_example_plan();
    let cst = construct_cst(&data, &query, &plan);
    let mut zero = SchedulerState::new(0.0).unwrap();
    assert!(matches!(zero.route(cst.clone(), 7), fastmatch::scheduler::Routed::Kernel(_)));
    let mut half = SchedulerState::new(0.5).unwrap();
    assert!(matches!(half.route(cst, 7), fastmatch::scheduler::Routed::Kernel(_)));
    assert_eq!((half.w_c, half.w_f), (0, 7));
}
