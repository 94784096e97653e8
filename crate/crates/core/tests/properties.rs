//! Randomized invariants checked against the brute-force oracles.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{by_query_vertex, random_instance};
use fastmatch::cst::{construct_cst, cst_metrics};
use fastmatch::graph::Graph;
use fastmatch::kernel::{
    cycle_estimate, fast_enumerate, generate, synchronize, validate_edges, validate_visited, CycleModel,
    KernelConfig, PartialResult, ResultBuffer, Variant,
};
use fastmatch::oracle::{brute_force_embeddings, brute_force_embeddings_flat, brute_force_tree_walks};
use fastmatch::partition::{compute_partition_factor, even_chunks, partition_cst, project_cst, PartitionConfig};
use fastmatch::plan::build_query_plan;
use fastmatch::scheduler::{host_match, run_job, JobConfig, Routed, SchedulerState};
use fastmatch::workload::estimate_workload;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn kernel_and_host_match_the_oracle(seed in any::<u64>(), n_o in prop_oneof![Just(1usize), 2usize..16, Just(1024usize)]) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let cst = construct_cst(&data, &query, &plan);
        let expected = brute_force_embeddings(&query, &data, plan.order()).unwrap();
        prop_assert_eq!(&host_match(&cst, &plan), &expected);
        for variant in Variant::ALL {
            let run = fast_enumerate(&cst, &plan, &KernelConfig { variant, n_o, ..KernelConfig::default() }).unwrap();
            prop_assert_eq!(&run.embeddings, &expected);
            prop_assert!(run.peak_occupancy <= n_o);
        }
    }

    #[test]
    fn the_two_oracles_agree(seed in any::<u64>()) {
        let (data, query) = random_instance(seed);
        let order: Vec<usize> = (0..query.vertex_count()).collect();
        if let Ok(flat) = brute_force_embeddings_flat(&query, &data, &order) {
            prop_assert_eq!(brute_force_embeddings(&query, &data, &order).unwrap(), flat);
        }
    }

    #[test]
    fn oracle_is_invariant_under_relabeling(seed in any::<u64>(), shift in 1u32..1000) {
        let (data, query) = random_instance(seed);
        let n = data.vertex_count() as u32;
        let perm: Vec<u32> = (0..n).map(|v| (v * 7919 + shift) % n).collect();
        let distinct: BTreeSet<u32> = perm.iter().copied().collect();
        prop_assume!(distinct.len() == n as usize);
        let mut labels = vec![0; n as usize];
        for v in 0..n {
            labels[perm[v as usize] as usize] = data.label(v);
        }
        let edges: Vec<(u32, u32)> = data.edges().map(|(a, b)| (perm[a as usize], perm[b as usize])).collect();
        let relabeled = Graph::from_edges(labels, &edges).unwrap();
        let order: Vec<usize> = (0..query.vertex_count()).collect();
        let original: BTreeSet<Vec<u32>> = brute_force_embeddings(&query, &data, &order)
            .unwrap()
            .into_iter()
            .map(|e| e.0.iter().map(|&v| perm[v as usize]).collect())
            .collect();
        let moved: BTreeSet<Vec<u32>> = brute_force_embeddings(&query, &relabeled, &order)
            .unwrap()
            .into_iter()
            .map(|e| e.0)
            .collect();
        prop_assert_eq!(original, moved);
    }

    #[test]
    fn cst_is_complete_refined_and_accounted(seed in any::<u64>()) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let mut cst = construct_cst(&data, &query, &plan);
        prop_assert_eq!(cst_metrics(&cst), (cst.size_bytes(), cst.max_degree()));
        for e in brute_force_embeddings(&query, &data, plan.order()).unwrap() {
            let img = e.by_query_vertex(plan.order());
            for (u, &v) in img.iter().enumerate() {
                prop_assert!(cst.candidate_index(u, v).is_some());
            }
            for (p, c) in plan.tree_edges() {
                prop_assert!(cst.has_edge(p, c, img[p], img[c]));
            }
            for (a, b) in plan.non_tree_edges() {
                prop_assert!(cst.has_edge(a, b, img[a], img[b]));
                prop_assert!(cst.has_edge(b, a, img[b], img[a]));
            }
        }
        let before = cst.clone();
        prop_assert_eq!(cst.refine(&plan), 0);
        prop_assert_eq!(cst, before);
    }

    #[test]
    fn workload_dp_equals_walk_count(seed in any::<u64>()) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let cst = construct_cst(&data, &query, &plan);
        prop_assert_eq!(estimate_workload(&cst, &plan).total(), brute_force_tree_walks(&cst, &plan).unwrap());
    }

    #[test]
    fn partitions_are_disjoint_complete_and_within_budget(seed in any::<u64>(), dd in 1usize..4, shrink in 1usize..4) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let cst = construct_cst(&data, &query, &plan);
        let whole = host_match(&cst, &plan);
        let header = fastmatch::Cst::header_bytes(plan.vertex_count());
        // leave room for one candidate per vertex plus one list per stored edge
        let floor = header + 4 * plan.vertex_count() + 12 * cst.edges().len();
        let cfg = PartitionConfig {
            delta_s: (cst.size_bytes() / shrink).max(floor),
            delta_d: dd,
            ..PartitionConfig::default()
        };
        let mut parts = Vec::new();
        let count = partition_cst(cst, &plan, 0, &cfg, &mut |c| {
            parts.push(c);
            Ok(())
        }).unwrap();
        prop_assert_eq!(count, parts.len());
        let mut union = Vec::new();
        for p in &parts {
            prop_assert!(p.size_bytes() <= cfg.delta_s && p.max_degree() <= cfg.delta_d);
            union.extend(host_match(p, &plan));
        }
        union.sort_unstable();
        let distinct = union.len();
        union.dedup();
        prop_assert_eq!(distinct, union.len());
        prop_assert_eq!(union, whole);
    }

    #[test]
    fn singleton_projections_cover_and_shrink(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let cst = construct_cst(&data, &query, &plan);
        prop_assume!(!cst.has_empty_candidates());
        let pos = pick.index(plan.vertex_count());
        let u = plan.order()[pos];
        let projections: Vec<_> = cst.candidates(u).iter().map(|&v| project_cst(&cst, &plan, u, &[v])).collect();
        for &w in &plan.order()[pos + 1..] {
            let covered: BTreeSet<u32> = projections.iter().flat_map(|p| p.candidates(w).iter().copied()).collect();
            let original: BTreeSet<u32> = cst.candidates(w).iter().copied().collect();
            prop_assert_eq!(covered, original);
        }
        for p in &projections {
            for e in p.edges() {
                for (v, list) in p.candidates(e.from).iter().zip(e.lists()) {
                    let full = cst.adjacency(e.from, e.to, *v).unwrap();
                    prop_assert!(list.iter().all(|x| full.contains(x)));
                }
            }
        }
    }

    #[test]
    fn partition_factor_matches_formula(seed in any::<u64>(), ds in 40usize..4000, dd in 1usize..17) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let cst = construct_cst(&data, &query, &plan);
        let cfg = PartitionConfig { delta_s: ds, delta_d: dd, ..PartitionConfig::default() };
        let u = plan.root();
        let ratio = (cst.size_bytes() as f64 / ds as f64).max(cst.max_degree() as f64 / dd as f64);
        let expected = (ratio.ceil() as usize).min(cst.candidates(u).len()).max(1);
        prop_assert_eq!(compute_partition_factor(&cst, &cfg, u), expected);
    }

    #[test]
    fn even_chunks_are_balanced(len in 0usize..200, k in 1usize..50) {
        let items: Vec<usize> = (0..len).collect();
        let chunks = even_chunks(&items, k);
        let sizes: Vec<usize> = chunks.iter().map(|c| c.len()).collect();
        let (lo, hi) = (sizes.iter().min().copied().unwrap_or(0), sizes.iter().max().copied().unwrap_or(0));
        prop_assert!(hi - lo <= 1);
        prop_assert_eq!(chunks.concat(), items);
    }

    #[test]
    fn counters_match_trace_and_batches_validate(seed in any::<u64>(), n_o in 1usize..12) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let cst = construct_cst(&data, &query, &plan);
        let run = fast_enumerate(&cst, &plan, &KernelConfig { n_o, ..KernelConfig::default() }).unwrap();
        prop_assert_eq!(run.model.n_total, run.trace.iter().map(|r| r.outputs as u64).sum::<u64>());
        prop_assert_eq!(run.model.m_total, run.trace.iter().map(|r| r.edge_tasks as u64).sum::<u64>());
        for r in &run.trace {
            let u = plan.order()[r.depth];
            let groups = plan.earlier_non_tree_neighbors(u).count();
            prop_assert_eq!(r.visited_tasks, r.outputs);
            prop_assert_eq!(r.edge_tasks, r.outputs * groups);
            prop_assert!(r.outputs <= n_o && r.accepted <= r.outputs);
        }

        // replay the pipeline by hand and check every batch against direct predicates
        prop_assume!(!cst.has_empty_candidates());
        let mut buffer = ResultBuffer::new(plan.vertex_count(), n_o);
        for &v in cst.candidates(plan.root()).iter().take(n_o) {
            buffer.push(PartialResult::root(v));
        }
        let mut results = Vec::new();
        while let Some(mut batch) = generate(&mut buffer, &cst, &plan) {
            batch.visited_bits = validate_visited(&batch.visited_tasks, &batch.sources);
            batch.edge_bits = validate_edges(&cst, batch.vertex, &batch.edge_tasks, batch.outputs.len());
            let pos = plan.position(batch.vertex);
            let mut valid = 0;
            for (i, p) in batch.outputs.iter().enumerate() {
                let v = p.get(pos);
                let fresh = !p.vertices()[..pos].contains(&v);
                let edges = plan.earlier_non_tree_neighbors(batch.vertex).all(|un| data.has_edge(v, p.get(plan.position(un))));
                prop_assert_eq!(batch.visited_bits[i], fresh);
                prop_assert_eq!(batch.edge_bits[i], edges);
                valid += usize::from(fresh && edges);
            }
            prop_assert_eq!(synchronize(batch, &mut buffer, &mut results, plan.vertex_count()), valid);
        }
    }

    #[test]
    fn cycle_variants_are_ordered_and_bounded(
        n in 0u64..1_000_000,
        m in 0u64..1_000_000,
        l in prop::array::uniform6(1.0f64..16.0),
        n_o in 1usize..4096,
    ) {
        let model = CycleModel::new(l).unwrap().with_counters(n, m);
        let basic = cycle_estimate(&model, Variant::Basic, n_o);
        let task = cycle_estimate(&model, Variant::Task, n_o);
        let sep = cycle_estimate(&model, Variant::Sep, n_o);
        prop_assert!(sep <= task && task <= basic);
        if basic > 0.0 {
            // the pipelined terms alone cap the gain at one half; the
            // serial/N_o term of the basic estimate adds its own share
            let serial_share = model.serial_cycles() / n_o as f64 / (2.0 * basic);
            prop_assert!(1.0 - task / basic <= 0.5 + serial_share + 1e-9);
        }
        if task > 0.0 {
            prop_assert!(1.0 - sep / task <= 1.0 / 3.0 + 1e-9);
        }
        let dram = model.scaled(7.0);
        prop_assert!(cycle_estimate(&dram, Variant::Basic, n_o) >= basic);
    }

    #[test]
    fn share_replay_bound(workloads in prop::collection::vec(0u64..10_000, 1..100), delta in 0.0f64..=1.0) {
        let mut state = SchedulerState::new(delta).unwrap();
        let (data, query) = fastmatch::fixtures::running_example();
        let plan = build_query_plan(&query, &data).unwrap();
        let cst = construct_cst(&data, &query, &plan);
        let (mut host, mut kernel) = (0u64, 0u64);
        for &w in &workloads {
            let host_before = state.w_c;
            let total_before = state.w_c + state.w_f;
            match state.route(cst.clone(), w) {
                Routed::Host => {
                    prop_assert!(((host_before + w) as f64) < delta * (total_before + w) as f64);
                    host += w;
                }
                Routed::Kernel(_) => kernel += w,
            }
        }
        prop_assert_eq!((state.w_c, state.w_f), (host, kernel));
        let total = host + kernel;
        if total > 0 {
            let largest = *workloads.iter().max().unwrap() as f64 / total as f64;
            prop_assert!(state.host_fraction() <= delta + largest);
        }
        prop_assert_eq!(state.host_queue().len(), state.decisions().iter().filter(|d| d.side == fastmatch::scheduler::Side::Host).count());
    }

    #[test]
    fn job_result_ignores_share_and_budgets(seed in any::<u64>(), delta in prop_oneof![Just(0.0), Just(0.1), Just(0.5), Just(1.0)], dd in 1usize..6) {
        let (data, query) = random_instance(seed);
        let plan = build_query_plan(&query, &data).unwrap();
        let expected = by_query_vertex(&brute_force_embeddings(&query, &data, plan.order()).unwrap(), plan.order());
        let cfg = JobConfig {
            delta,
            partition: PartitionConfig { delta_d: dd, ..PartitionConfig::default() },
            ..JobConfig::default()
        };
        match run_job(&data, &query, &cfg) {
            Ok(out) => {
                prop_assert_eq!(out.embeddings, expected);
                prop_assert_eq!(out.stats.w_c + out.stats.w_f, out.decisions.iter().map(|d| d.workload).sum::<u64>());
            }
            Err(fastmatch::Error::Unsplittable { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn graph_text_round_trips(seed in any::<u64>()) {
        let (data, query) = random_instance(seed);
        for g in [data, query] {
            let back = Graph::parse(&g.to_text()).unwrap();
            prop_assert_eq!(back.to_text(), g.to_text());
            prop_assert_eq!(back.edge_count(), g.edge_count());
        }
    }
}
