//! Branch-and-reduce driver: reduce to a fixpoint, split connected
//! components, prune against the clique-cover bound, then branch on a
//! strategy-chosen vertex (include first by default, excluding branches
//! spawn a packing constraint).

use crate::bounds::{clique_cover_ub, greedy_lb};
use crate::branching::{Strategy, StrategyState};
use crate::graph::{is_independent_set, Graph};
use crate::packing::PackingStore;
use crate::pool::BranchCandidatePool;
use crate::reductions::{reconstruct_solution, Reducer, ReductionEvent, RuleCounters};
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub strategy: Strategy,
    /// Wall-clock limit in seconds; must be positive, may be infinite.
    pub time_limit: f64,
    pub seed: u64,
    pub packing_enabled: bool,
    pub bound_enabled: bool,
    /// Explore the including branch first (the default).
    pub include_first: bool,
    /// Record (vertex, used_fallback) per branch node into the report.
    pub record_branches: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            strategy: Strategy::MaxDegree,
            time_limit: f64::INFINITY,
            seed: 42,
            packing_enabled: true,
            bound_enabled: true,
            include_first: true,
            record_branches: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub mis_size: usize,
    /// Certified independent set in original vertex ids, sorted.
    pub solution: Vec<usize>,
    /// Number of two-way branch nodes.
    pub branches: u64,
    /// Total search-tree nodes visited.
    pub nodes: u64,
    pub rule_counters: RuleCounters,
    pub elapsed: f64,
    pub timed_out: bool,
    /// Filled when `record_branches` is set.
    pub branch_log: Vec<(usize, bool)>,
}

struct Ctx<'a> {
    cfg: &'a SolverConfig,
    deadline: Option<Instant>,
    branches: u64,
    nodes: u64,
    counters: RuleCounters,
    timed_out: bool,
    branch_log: Vec<(usize, bool)>,
}

struct Incumbent {
    size: usize,
    set: Vec<usize>,
}

/// Exact maximum independent set of the alive subgraph. The graph is
/// restored to its entry state on return, so it can be reused.
pub fn solve(g: &mut Graph, cfg: &SolverConfig) -> SolveReport {
    assert!(cfg.time_limit > 0.0, "time_limit must be positive");
    let start = Instant::now();
    let deadline = if cfg.time_limit.is_finite() {
        Some(start + Duration::from_secs_f64(cfg.time_limit))
    } else {
        None
    };
    let mut ctx = Ctx {
        cfg,
        deadline,
        branches: 0,
        nodes: 0,
        counters: RuleCounters::default(),
        timed_out: false,
        branch_log: Vec::new(),
    };
    let mut strat = StrategyState::new(cfg.strategy, cfg.seed);
    let cp = g.checkpoint();
    let (size, mut solution) = solve_graph(g, &mut ctx, &mut strat);
    g.restore(cp);
    solution.sort_unstable();
    debug_assert!(is_independent_set(g, &solution));
    debug_assert_eq!(solution.len(), size);
    SolveReport {
        mis_size: size,
        solution,
        branches: ctx.branches,
        nodes: ctx.nodes,
        rule_counters: ctx.counters,
        elapsed: start.elapsed().as_secs_f64(),
        timed_out: ctx.timed_out,
        branch_log: ctx.branch_log,
    }
}

/// Solves the alive subgraph as one self-contained search with its own
/// incumbent, trace and packing store. Returns exact alpha and a witness
/// unless the deadline fired, in which case the best incumbent is returned.
fn solve_graph(g: &mut Graph, ctx: &mut Ctx, strat: &mut StrategyState) -> (usize, Vec<usize>) {
    let set = greedy_lb(g);
    let mut best = Incumbent {
        size: set.len(),
        set,
    };
    let mut store = PackingStore::new(g.n_original());
    let mut pool = BranchCandidatePool::new(g.n_original());
    let mut trace: Vec<ReductionEvent> = Vec::new();
    rec(g, ctx, strat, &mut store, &mut pool, &mut trace, 0, &mut best);
    (best.size, best.set)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    g: &mut Graph,
    ctx: &mut Ctx,
    strat: &mut StrategyState,
    store: &mut PackingStore,
    pool: &mut BranchCandidatePool,
    trace: &mut Vec<ReductionEvent>,
    acc: usize,
    best: &mut Incumbent,
) {
    ctx.nodes += 1;
    if ctx.nodes % 1024 == 1 {
        if let Some(d) = ctx.deadline {
            if Instant::now() >= d {
                ctx.timed_out = true;
            }
        }
    }
    if ctx.timed_out {
        return;
    }

    let gcp = g.checkpoint();
    let scp = store.checkpoint();
    let tlen = trace.len();

    let packing = ctx.cfg.packing_enabled;
    let outcome = {
        let store_opt = packing.then_some(&mut *store);
        let mut r = Reducer::new(g, store_opt, pool, trace, &mut ctx.counters);
        r.reduce_to_fixpoint()
    };

    'node: {
        if outcome.pruned {
            break 'node;
        }
        let acc2 = acc + outcome.offset;

        if g.alive_count() == 0 {
            if acc2 > best.size {
                best.size = acc2;
                best.set = reconstruct_solution(trace, &[]);
            }
            break 'node;
        }

        let mut comps = g.connected_components();
        if comps.len() > 1 {
            comps.sort_by_key(|c| c.len());
            let mut total = acc2;
            let mut witness: Vec<usize> = Vec::new();
            for comp in &comps {
                let ccp = g.checkpoint();
                let outside: Vec<usize> = g
                    .vertices()
                    .filter(|v| comp.binary_search(v).is_err())
                    .collect();
                for v in outside {
                    g.hide_vertex(v);
                }
                let mut child = strat.fork();
                let (size, set) = solve_graph(g, ctx, &mut child);
                g.restore(ccp);
                total += size;
                witness.extend(set);
            }
            if total > best.size {
                best.size = total;
                best.set = reconstruct_solution(trace, &witness);
            }
            break 'node;
        }

        if ctx.cfg.bound_enabled && acc2 + clique_cover_ub(g) <= best.size {
            break 'node;
        }

        let decision = strat.select(g, pool);
        ctx.branches += 1;
        if ctx.cfg.record_branches {
            ctx.branch_log.push((decision.vertex, decision.used_fallback));
        }
        let v = decision.vertex;

        let phases = if ctx.cfg.include_first {
            [true, false]
        } else {
            [false, true]
        };
        for include in phases {
            let bg = g.checkpoint();
            let bs = store.checkpoint();
            let bt = trace.len();
            let gain = {
                let store_opt = packing.then_some(&mut *store);
                let mut r = Reducer::new(g, store_opt, pool, trace, &mut ctx.counters);
                if include {
                    r.branch_include(v)
                } else {
                    r.branch_exclude(v)
                }
            };
            if let Some(gain) = gain {
                rec(g, ctx, strat, store, pool, trace, acc2 + gain, best);
            }
            g.restore(bg);
            store.restore(bs);
            trace.truncate(bt);
            if ctx.timed_out {
                break;
            }
        }
    }

    g.restore(gcp);
    store.restore(scp);
    trace.truncate(tlen);
}
