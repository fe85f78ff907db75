use super::*;
use crate::gen;
use crate::graph::is_independent_set;
use crate::oracle::brute_force_mis;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

struct Run {
    outcome: ReduceOutcome,
    trace: Vec<ReductionEvent>,
    counters: RuleCounters,
    pool_entries: Vec<(usize, SourceRule)>,
}

fn reduce(g: &mut Graph) -> Run {
    let mut pool = BranchCandidatePool::new(g.n_original());
    let mut trace = Vec::new();
    let mut counters = RuleCounters::default();
    let outcome = Reducer::new(g, None, &mut pool, &mut trace, &mut counters).reduce_to_fixpoint();
    Run {
        outcome,
        trace,
        counters,
        pool_entries: pool.entries().to_vec(),
    }
}

fn run_single(g: &mut Graph, rule: Rule) -> Run {
    let mut pool = BranchCandidatePool::new(g.n_original());
    let mut trace = Vec::new();
    let mut counters = RuleCounters::default();
    let mut r = Reducer::new(g, None, &mut pool, &mut trace, &mut counters);
    r.run_rule(rule);
    let offset = r.offset();
    Run {
        outcome: ReduceOutcome {
            offset,
            pruned: false,
        },
        trace,
        counters,
        pool_entries: pool.entries().to_vec(),
    }
}

fn alpha(g: &Graph) -> usize {
    brute_force_mis(g).unwrap().alpha
}

#[test]
fn fixpoint_on_paths_and_triangle() {
    let mut p5 = gen::path(5);
    let run = reduce(&mut p5);
    assert_eq!(run.outcome.offset, 3);
    assert_eq!(p5.alive_count(), 0);

    let mut tri = gen::complete(3);
    let run = reduce(&mut tri);
    assert_eq!(run.outcome.offset, 1);
    assert_eq!(tri.alive_count(), 0);

    let mut empty = gen::from_edges(0, &[]);
    let run = reduce(&mut empty);
    assert_eq!(run.outcome.offset, 0);
    assert!(run.trace.is_empty());
}

#[test]
fn degree_rules_examples() {
    // single edge: one in, one out
    let mut g = gen::from_edges(2, &[(0, 1)]);
    let run = reduce(&mut g);
    assert_eq!(run.outcome.offset, 1);
    assert!(run
        .trace
        .iter()
        .any(|e| matches!(e, ReductionEvent::Included(_))));

    let mut p3 = gen::path(3);
    assert_eq!(reduce(&mut p3).outcome.offset, 2);

    let mut star = gen::star(4);
    let run = reduce(&mut star);
    assert_eq!(run.outcome.offset, 4);
}

#[test]
fn dominance_examples() {
    // triangle {0,1,2} with pendant 3 on vertex 0: N[1] subset of N[0],
    // so 0 is the dominating vertex and gets excluded first.
    let mut g = gen::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]);
    let before = alpha(&g);
    let run = run_single(&mut g, Rule::Dominance);
    assert_eq!(run.trace[0], ReductionEvent::Excluded(0));
    assert!(run.counters.dominance >= 1);
    assert_eq!(alpha(&g), before); // exclusions shift no offset

    // K4 reduces to a single vertex through dominance, then deg0
    let mut k4 = gen::complete(4);
    assert_eq!(reduce(&mut k4).outcome.offset, 1);

    // C5 has no dominated pair
    let mut c5 = gen::cycle(5);
    let run = run_single(&mut c5, Rule::Dominance);
    assert_eq!(run.counters.dominance, 0);
    assert_eq!(c5.alive_count(), 5);
}

#[test]
fn deg2_fold_preserves_alpha() {
    for seed in 0..40 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(6..14);
        let mut g = gen::gnp(n, 0.25, seed + 500);
        let before = alpha(&g);
        let run = run_single(&mut g, Rule::Deg2Fold);
        assert_eq!(alpha(&g) + run.outcome.offset, before);
    }
}

#[test]
fn twin_with_inner_edge_includes_both() {
    // u=0, v=1 twins over {2,3,4} with edge (2,3)
    let mut g = gen::from_edges(
        5,
        &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)],
    );
    let before = alpha(&g);
    let run = run_single(&mut g, Rule::Twin);
    assert_eq!(run.outcome.offset, 2);
    assert_eq!(before, 2);
    let included: Vec<usize> = run
        .trace
        .iter()
        .filter_map(|e| match e {
            ReductionEvent::Included(v) => Some(*v),
            _ => None,
        })
        .collect();
    assert_eq!(included, vec![1, 0]);
    assert_eq!(g.alive_count(), 0);
}

#[test]
fn twin_fold_gadget_matches_oracle() {
    // twins 0,1 over independent {2,3,4}, each pendant-attached outside
    let mut g = gen::from_edges(
        8,
        &[
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (3, 6),
            (4, 7),
        ],
    );
    let before = alpha(&g);
    let original = g.clone();
    let run = run_single(&mut g, Rule::Twin);
    assert_eq!(run.outcome.offset, 2);
    // the scan visits v=0 first and finds its twin u=1, which keeps its id
    assert!(matches!(
        run.trace[0],
        ReductionEvent::TwinFold { u: 1, v: 0, w_new: 1, .. }
    ));
    let nbrs: Vec<usize> = g.neighbors(1).collect();
    assert_eq!(nbrs, vec![5, 6, 7]);
    assert_eq!(alpha(&g) + 2, before);

    // lift an MIS of the reduced graph and check it in the original
    let reduced_mis = brute_force_mis(&g).unwrap();
    let lifted = reconstruct_solution(&run.trace, &reduced_mis.witness);
    assert!(is_independent_set(&original, &lifted));
    assert_eq!(lifted.len(), before);
}

#[test]
fn almost_twin_pools_witness() {
    // v=0 with N={2,3,4}; u=1 with N={2,3,4,5}: witness 5
    let edges = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (1, 5)];
    let mut g = gen::from_edges(6, &edges);
    let run = run_single(&mut g, Rule::Twin);
    assert_eq!(run.counters.twin, 0);
    assert_eq!(run.pool_entries, vec![(5, SourceRule::Twin)]);

    // hiding the witness turns the pair into twins
    let mut h = gen::from_edges(6, &edges);
    h.hide_vertex(5);
    let run = run_single(&mut h, Rule::Twin);
    assert_eq!(run.counters.twin, 1);
}

#[test]
fn funnel_examples() {
    // v=0 with N(v)={1,2,3}, clique {2,3}: funnel at (u=1, v=0)
    let mut g = gen::from_edges(
        6,
        &[(0, 1), (0, 2), (0, 3), (2, 3), (1, 4), (1, 5), (4, 5)],
    );
    let before = alpha(&g);
    let original = g.clone();
    let mut pool = BranchCandidatePool::new(g.n_original());
    let mut trace = Vec::new();
    let mut counters = RuleCounters::default();
    let mut r = Reducer::new(&mut g, None, &mut pool, &mut trace, &mut counters);
    assert!(r.try_funnel(0, 1));
    assert!(matches!(
        &trace[0],
        ReductionEvent::Alternative { a, b, .. } if a == &vec![1] && b == &vec![0]
    ));
    assert_eq!(alpha(&g) + 1, before);
    // lifting stays valid through the added frontier edges
    let reduced = brute_force_mis(&g).unwrap();
    let lifted = reconstruct_solution(&trace, &reduced.witness);
    assert!(is_independent_set(&original, &lifted));
    assert_eq!(lifted.len(), before);

    // deg-2 funnel is trivial: a single vertex is a clique
    let mut p3 = gen::from_edges(3, &[(0, 1), (0, 2)]);
    let run = run_single(&mut p3, Rule::Funnel);
    assert_eq!(run.counters.funnel, 1);
}

#[test]
fn almost_funnel_pools_witnesses() {
    // v=0, N(v)={1,2,3,4}, edges (2,3),(2,4): removing 3 or 4 leaves a clique
    let mut g = gen::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (2, 4)]);
    let mut pool = BranchCandidatePool::new(g.n_original());
    let mut trace = Vec::new();
    let mut counters = RuleCounters::default();
    let mut r = Reducer::new(&mut g, None, &mut pool, &mut trace, &mut counters);
    assert!(!r.try_funnel(0, 1));
    let mut pooled: Vec<usize> = pool.entries().iter().map(|e| e.0).collect();
    pooled.sort_unstable();
    assert_eq!(pooled, vec![3, 4]);
    assert!(pool.entries().iter().all(|e| e.1 == SourceRule::Funnel));
}

#[test]
fn unconfined_basic_cases() {
    // a pendant neighbor makes any vertex unconfined: residue 0 right away
    let mut g = gen::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
    let run = run_single(&mut g, Rule::Unconfined);
    assert!(run.counters.unconfined >= 1);
    assert_eq!(run.trace[0], ReductionEvent::Excluded(0));
}

#[test]
fn unconfined_exclusions_preserve_alpha() {
    for seed in 0..60 {
        let mut g = gen::gnp(12, 0.3, seed + 900);
        let before = alpha(&g);
        let _ = run_single(&mut g, Rule::Unconfined);
        assert_eq!(alpha(&g), before);
    }
}

#[test]
fn unconfined_witness_gadget() {
    // v=0: child 1 is the single extending child with witness 4; after S
    // grows to {0,4} every child keeps residue 2, so the probe fails and 4
    // is pooled. Removing 4 gives child 1 residue 0 immediately.
    let edges = [
        (0, 1),
        (0, 2),
        (1, 4),
        (2, 7),
        (2, 8),
        (4, 9),
        (4, 10),
        (9, 11),
        (9, 12),
        (10, 13),
        (10, 14),
    ];
    let mut g = gen::from_edges(15, &edges);
    let run = run_single(&mut g, Rule::Unconfined);
    assert!(run.pool_entries.contains(&(4, SourceRule::Unconfined)));
    assert!(g.is_alive(0));

    let mut h = gen::from_edges(15, &edges);
    h.hide_vertex(4);
    let run = run_single(&mut h, Rule::Unconfined);
    assert_eq!(run.trace[0], ReductionEvent::Excluded(0));
}

#[test]
fn reconstruct_identity_and_p3_fold() {
    assert_eq!(reconstruct_solution(&[], &[3, 1]), vec![1, 3]);

    let mut p3 = gen::path(3);
    let run = reduce(&mut p3);
    let lifted = reconstruct_solution(&run.trace, &[]);
    assert_eq!(lifted, vec![0, 2]);
}

#[test]
fn fixpoint_leaves_no_applicable_rule() {
    for seed in 0..30 {
        let mut g = gen::gnp(14, 0.3, seed + 40);
        let _ = reduce(&mut g);
        for rule in RULE_ORDER {
            let run = run_single(&mut g, rule);
            assert_eq!(
                run.counters,
                RuleCounters::default(),
                "rule {rule:?} applied after fixpoint (seed {seed})"
            );
        }
    }
}

#[test]
fn reduce_preserves_alpha_and_lifts_cleanly() {
    for seed in 0..150 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(4..16);
        let p = rng.gen_range(0.1..0.6);
        let mut g = gen::gnp(n, p, seed);
        let original = g.clone();
        let before = alpha(&g);
        let run = reduce(&mut g);
        assert!(!run.outcome.pruned);
        let reduced_mis = brute_force_mis(&g).unwrap();
        assert_eq!(reduced_mis.alpha + run.outcome.offset, before);

        let lifted = reconstruct_solution(&run.trace, &reduced_mis.witness);
        assert!(is_independent_set(&original, &lifted));
        assert_eq!(lifted.len(), before);
    }
}

#[test]
fn trace_offsets_sum_consistently() {
    for seed in 0..30 {
        let mut g = gen::gnp(12, 0.25, seed + 71);
        let run = reduce(&mut g);
        let total: usize = run.trace.iter().map(|e| e.offset()).sum();
        assert_eq!(total, run.outcome.offset);
    }
}
