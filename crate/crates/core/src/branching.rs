//! Branching strategies: the default maximum-degree rule, three
//! decomposition strategies (articulation points, edge cuts, nested
//! dissection) and five reduction-targeted strategies driven by the
//! candidate pool (twin, funnel, unconfined, packing, combined).

use crate::graph::Graph;
use crate::pool::{BranchCandidatePool, SourceRule};
use crate::separators::{
    articulation_points, find_branching_separator, nested_dissection_order, EDGE_CUT_SKIP_STEPS,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    MaxDegree,
    Articulation,
    EdgeCut,
    NestedDissection,
    Twin,
    Funnel,
    Unconfined,
    Packing,
    Combined,
}

impl Strategy {
    pub const ALL: [Strategy; 9] = [
        Strategy::MaxDegree,
        Strategy::Articulation,
        Strategy::EdgeCut,
        Strategy::NestedDissection,
        Strategy::Twin,
        Strategy::Funnel,
        Strategy::Unconfined,
        Strategy::Packing,
        Strategy::Combined,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::MaxDegree => "max-degree",
            Strategy::Articulation => "articulation",
            Strategy::EdgeCut => "edge-cut",
            Strategy::NestedDissection => "nested-dissection",
            Strategy::Twin => "twin",
            Strategy::Funnel => "funnel",
            Strategy::Unconfined => "unconfined",
            Strategy::Packing => "packing",
            Strategy::Combined => "combined",
        }
    }

    /// Fallback threshold k: reduction strategies fall back to max degree
    /// when the best candidate has degree below Delta - k.
    fn k_threshold(&self) -> i64 {
        match self {
            Strategy::Twin | Strategy::Funnel | Strategy::Unconfined => 2,
            Strategy::Packing => 5,
            Strategy::Combined => 4,
            _ => 0,
        }
    }

    fn accepts(&self, rule: SourceRule) -> bool {
        match self {
            Strategy::Twin => rule == SourceRule::Twin,
            Strategy::Funnel => rule == SourceRule::Funnel,
            Strategy::Unconfined => rule == SourceRule::Unconfined,
            Strategy::Packing => rule == SourceRule::Packing,
            Strategy::Combined => true,
            _ => false,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .iter()
            .copied()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchDecision {
    pub vertex: usize,
    pub used_fallback: bool,
}

#[derive(Debug, Clone)]
struct NdCursor {
    order: Vec<usize>,
    pos: usize,
}

/// Per-descent strategy state. Cached separator vertices survive across
/// branching steps and are filtered of dead entries at each use; the state is
/// deliberately not restored on backtrack.
pub struct StrategyState {
    kind: Strategy,
    cached: Vec<usize>,
    skip_counter: u32,
    nd: Option<NdCursor>,
    nd_built: bool,
    rng: ChaCha8Rng,
}

impl StrategyState {
    pub fn new(kind: Strategy, seed: u64) -> Self {
        StrategyState {
            kind,
            cached: Vec::new(),
            skip_counter: 0,
            nd: None,
            nd_built: false,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn kind(&self) -> Strategy {
        self.kind
    }

    /// Derives the state for a component sub-solve: cached vertices and the
    /// remaining dissection order carry over (dead entries filter out at
    /// use), the RNG forks deterministically.
    pub fn fork(&mut self) -> StrategyState {
        let child_seed = self.rng.next_u64();
        StrategyState {
            kind: self.kind,
            cached: self.cached.clone(),
            skip_counter: self.skip_counter,
            nd: self.nd.as_ref().map(|c| NdCursor {
                order: c.order[c.pos..].to_vec(),
                pos: 0,
            }),
            nd_built: self.nd_built,
            rng: ChaCha8Rng::seed_from_u64(child_seed),
        }
    }

    pub fn select(&mut self, g: &Graph, pool: &BranchCandidatePool) -> BranchDecision {
        match self.kind {
            Strategy::MaxDegree => BranchDecision {
                vertex: max_degree_vertex(g),
                used_fallback: false,
            },
            Strategy::Articulation => self.select_articulation(g),
            Strategy::EdgeCut => self.select_edge_cut(g),
            Strategy::NestedDissection => self.select_nested_dissection(g),
            _ => self.select_reduction_targeted(g, pool),
        }
    }

    fn select_articulation(&mut self, g: &Graph) -> BranchDecision {
        self.cached.retain(|&v| g.is_alive(v));
        if self.cached.is_empty() {
            self.cached = articulation_points(g);
        }
        match pick_cached(&self.cached, g) {
            Some(v) => BranchDecision {
                vertex: v,
                used_fallback: false,
            },
            None => fallback(g),
        }
    }

    fn select_edge_cut(&mut self, g: &Graph) -> BranchDecision {
        self.cached.retain(|&v| g.is_alive(v));
        if let Some(v) = pick_cached(&self.cached, g) {
            return BranchDecision {
                vertex: v,
                used_fallback: false,
            };
        }
        if self.skip_counter > 0 {
            self.skip_counter -= 1;
            return fallback(g);
        }
        match find_branching_separator(g, &mut self.rng) {
            Some(sep) => {
                self.cached = sep.vertices;
                let v = pick_cached(&self.cached, g).expect("fresh separator is alive");
                BranchDecision {
                    vertex: v,
                    used_fallback: false,
                }
            }
            None => {
                self.skip_counter = EDGE_CUT_SKIP_STEPS;
                fallback(g)
            }
        }
    }

    fn select_nested_dissection(&mut self, g: &Graph) -> BranchDecision {
        if !self.nd_built {
            self.nd_built = true;
            self.nd = nested_dissection_order(g, &mut self.rng).map(|o| NdCursor {
                order: o.order,
                pos: 0,
            });
        }
        if let Some(c) = self.nd.as_mut() {
            while c.pos < c.order.len() {
                let v = c.order[c.pos];
                c.pos += 1;
                if g.is_alive(v) {
                    return BranchDecision {
                        vertex: v,
                        used_fallback: false,
                    };
                }
            }
        }
        fallback(g)
    }

    fn select_reduction_targeted(
        &mut self,
        g: &Graph,
        pool: &BranchCandidatePool,
    ) -> BranchDecision {
        let best = pool
            .entries()
            .iter()
            .filter(|&&(v, rule)| self.kind.accepts(rule) && g.is_alive(v))
            .map(|&(v, _)| v)
            .max_by_key(|&v| (g.degree(v), Reverse(v)));
        if let Some(v) = best {
            let delta = g.max_degree() as i64;
            if g.degree(v) as i64 >= delta - self.kind.k_threshold() {
                return BranchDecision {
                    vertex: v,
                    used_fallback: false,
                };
            }
        }
        fallback(g)
    }
}

fn fallback(g: &Graph) -> BranchDecision {
    BranchDecision {
        vertex: max_degree_vertex(g),
        used_fallback: true,
    }
}

/// Alive vertex of maximum degree, ties broken by smallest id.
pub fn max_degree_vertex(g: &Graph) -> usize {
    g.vertices()
        .max_by_key(|&v| (g.degree(v), Reverse(v)))
        .expect("select on empty graph")
}

fn pick_cached(cached: &[usize], g: &Graph) -> Option<usize> {
    cached
        .iter()
        .copied()
        .filter(|&v| g.is_alive(v))
        .max_by_key(|&v| (g.degree(v), Reverse(v)))
}
