//! Data-reduction kernel: degree rules, dominance, degree-2 fold, twin,
//! unconfined and funnel (alternative) reductions, applied in a fixed order
//! to a fixpoint. Every application appends a `ReductionEvent` so a solution
//! of the reduced graph can be lifted back, and the failing passes harvest
//! "almost-reduction" branch candidates into the pool.

use crate::graph::Graph;
use crate::packing::{EliminationKind, ForcedAction, PackingStore};
use crate::pool::{BranchCandidatePool, SourceRule};
use std::collections::VecDeque;

/// One reconstruction-trace entry. Events are replayed newest-first by
/// `reconstruct_solution` to lift a reduced-graph MIS to the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionEvent {
    Included(usize),
    Excluded(usize),
    /// Degree-2 fold of center `fold` with nonadjacent neighbors
    /// `left`, `right`. `fold` keeps its id and absorbs both neighborhoods.
    Deg2Fold {
        fold: usize,
        left: usize,
        right: usize,
    },
    /// Twin fold of nonadjacent degree-3 twins `u`, `v`. The new vertex
    /// reuses `u`'s id (`w_new == u`); `saved` is N(u) at reduction time.
    TwinFold {
        u: usize,
        v: usize,
        w_new: usize,
        saved: Vec<usize>,
    },
    /// Alternative reduction on sets A, B (funnel case: singletons).
    /// `frontier_a` is N(A) \ N[B] at reduction time.
    Alternative {
        a: Vec<usize>,
        b: Vec<usize>,
        removed_common: Vec<usize>,
        added_edges: Vec<(usize, usize)>,
        frontier_a: Vec<usize>,
    },
}

impl ReductionEvent {
    /// How much the event contributes to the solution size offset.
    pub fn offset(&self) -> usize {
        match self {
            ReductionEvent::Included(_) => 1,
            ReductionEvent::Excluded(_) => 0,
            ReductionEvent::Deg2Fold { .. } => 1,
            ReductionEvent::TwinFold { .. } => 2,
            ReductionEvent::Alternative { .. } => 1,
        }
    }
}

/// Lifts `reduced_solution` through `events` (replayed newest-first) to an
/// independent set of the graph the trace started from.
pub fn reconstruct_solution(events: &[ReductionEvent], reduced_solution: &[usize]) -> Vec<usize> {
    let mut set: std::collections::HashSet<usize> = reduced_solution.iter().copied().collect();
    for ev in events.iter().rev() {
        match ev {
            ReductionEvent::Included(v) => {
                set.insert(*v);
            }
            ReductionEvent::Excluded(_) => {}
            ReductionEvent::Deg2Fold { fold, left, right } => {
                if set.remove(fold) {
                    set.insert(*left);
                    set.insert(*right);
                } else {
                    set.insert(*fold);
                }
            }
            ReductionEvent::TwinFold { u, v, w_new, saved } => {
                if set.remove(w_new) {
                    set.extend(saved.iter().copied());
                } else {
                    set.insert(*u);
                    set.insert(*v);
                }
            }
            ReductionEvent::Alternative {
                a, b, frontier_a, ..
            } => {
                if frontier_a.iter().any(|x| set.contains(x)) {
                    set.extend(b.iter().copied());
                } else {
                    set.extend(a.iter().copied());
                }
            }
        }
    }
    let mut out: Vec<usize> = set.into_iter().collect();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceOutcome {
    /// Added to the reduced-graph MIS size.
    pub offset: usize,
    /// Packing infeasibility: the branch yields nothing better than its
    /// sibling and the events need no lifting.
    pub pruned: bool,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct RuleCounters {
    pub deg0: u64,
    pub deg1: u64,
    pub dominance: u64,
    pub deg2_fold: u64,
    pub twin: u64,
    pub unconfined: u64,
    pub funnel: u64,
    pub packing: u64,
}

impl RuleCounters {
    pub fn as_pairs(&self) -> [(&'static str, u64); 8] {
        [
            ("deg0", self.deg0),
            ("deg1", self.deg1),
            ("dominance", self.dominance),
            ("deg2_fold", self.deg2_fold),
            ("twin", self.twin),
            ("unconfined", self.unconfined),
            ("funnel", self.funnel),
            ("packing", self.packing),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Deg0,
    Deg1,
    Dominance,
    Deg2Fold,
    Twin,
    Unconfined,
    Funnel,
    Packing,
}

/// Fixed application order, cheap to expensive. A successful pass restarts
/// from the first rule.
pub const RULE_ORDER: [Rule; 8] = [
    Rule::Deg0,
    Rule::Deg1,
    Rule::Dominance,
    Rule::Deg2Fold,
    Rule::Twin,
    Rule::Unconfined,
    Rule::Funnel,
    Rule::Packing,
];

struct Marks {
    stamp: u32,
    data: Vec<u32>,
}

impl Marks {
    fn new(n: usize) -> Self {
        Marks {
            stamp: 1,
            data: vec![0; n],
        }
    }

    fn clear(&mut self) {
        self.stamp = self.stamp.checked_add(1).unwrap_or_else(|| {
            self.data.fill(0);
            1
        });
    }

    fn set(&mut self, v: usize) {
        self.data[v] = self.stamp;
    }

    fn get(&self, v: usize) -> bool {
        self.data[v] == self.stamp
    }
}

/// Reduction engine bound to one graph (and optionally a packing store) for
/// the duration of one search-tree node.
pub struct Reducer<'a> {
    g: &'a mut Graph,
    store: Option<&'a mut PackingStore>,
    pool: &'a mut BranchCandidatePool,
    trace: &'a mut Vec<ReductionEvent>,
    counters: &'a mut RuleCounters,
    queue: VecDeque<ForcedAction>,
    offset: usize,
    pruned: bool,
    marks: Marks,
    marks2: Marks,
    // reusable buffers for the hot paths
    snap: Vec<usize>,
    probe_members: Vec<usize>,
    probe_cand: Vec<usize>,
}

impl<'a> Reducer<'a> {
    pub fn new(
        g: &'a mut Graph,
        store: Option<&'a mut PackingStore>,
        pool: &'a mut BranchCandidatePool,
        trace: &'a mut Vec<ReductionEvent>,
        counters: &'a mut RuleCounters,
    ) -> Self {
        let n = g.n_original();
        Reducer {
            g,
            store,
            pool,
            trace,
            counters,
            queue: VecDeque::new(),
            offset: 0,
            pruned: false,
            marks: Marks::new(n),
            marks2: Marks::new(n),
            snap: Vec::new(),
            probe_members: Vec::new(),
            probe_cand: Vec::new(),
        }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn pruned(&self) -> bool {
        self.pruned
    }

    /// Applies rules in `RULE_ORDER` until none fires. The pool is cleared at
    /// every restart, so on return it holds exactly the candidates harvested
    /// during the final (all-failing) sweep.
    pub fn reduce_to_fixpoint(&mut self) -> ReduceOutcome {
        loop {
            self.pool.clear();
            let mut any = false;
            for rule in RULE_ORDER {
                let applied = self.run_rule(rule);
                if self.pruned {
                    return ReduceOutcome {
                        offset: self.offset,
                        pruned: true,
                    };
                }
                if applied {
                    any = true;
                    break;
                }
            }
            if !any {
                break;
            }
        }
        ReduceOutcome {
            offset: self.offset,
            pruned: false,
        }
    }

    /// Runs one full pass of a single rule over all alive vertices. Returns
    /// true if the pass changed the graph.
    pub fn run_rule(&mut self, rule: Rule) -> bool {
        match rule {
            Rule::Deg0 => self.deg0_pass(),
            Rule::Deg1 => self.deg1_pass(),
            Rule::Dominance => self.dominance_pass(),
            Rule::Deg2Fold => self.deg2_pass(),
            Rule::Twin => self.twin_pass(),
            Rule::Unconfined => self.unconfined_pass(),
            Rule::Funnel => self.funnel_pass(),
            Rule::Packing => self.packing_pass(),
        }
    }

    /// Takes the including branch at `v`: v enters the solution, N[v] leaves
    /// the graph. Returns the solution-size gain, or None when a packing
    /// cascade proves the branch infeasible.
    pub fn branch_include(&mut self, v: usize) -> Option<usize> {
        let before = self.offset;
        self.include(v);
        self.drain();
        if self.pruned {
            None
        } else {
            Some(self.offset - before)
        }
    }

    /// Takes the excluding branch at `v`, registering the packing constraint
    /// over N(v) first when a store is attached.
    pub fn branch_exclude(&mut self, v: usize) -> Option<usize> {
        if let Some(store) = self.store.as_deref_mut() {
            let nbrs: Vec<usize> = self.g.neighbors(v).collect();
            store.add_exclude_constraint(v, &nbrs);
        }
        let before = self.offset;
        self.exclude(v);
        self.drain();
        if self.pruned {
            None
        } else {
            Some(self.offset - before)
        }
    }

    fn hook(&mut self, v: usize, kind: EliminationKind) {
        if let Some(store) = self.store.as_deref_mut() {
            let actions = store.on_eliminate(v, kind, self.g, self.pool);
            self.queue.extend(actions);
        }
    }

    fn include(&mut self, v: usize) {
        self.trace.push(ReductionEvent::Included(v));
        let mut nbrs = std::mem::take(&mut self.snap);
        nbrs.clear();
        nbrs.extend(self.g.neighbors(v));
        self.g.hide_vertex(v);
        self.hook(v, EliminationKind::Included);
        for &u in &nbrs {
            self.trace.push(ReductionEvent::Excluded(u));
            self.g.hide_vertex(u);
            self.hook(u, EliminationKind::Excluded);
        }
        self.snap = nbrs;
        self.offset += 1;
    }

    fn exclude(&mut self, v: usize) {
        self.trace.push(ReductionEvent::Excluded(v));
        self.g.hide_vertex(v);
        self.hook(v, EliminationKind::Excluded);
    }

    /// Applies queued forced actions FIFO until empty or pruned. Actions on
    /// vertices that died earlier in the cascade are skipped; that only
    /// forgoes an optional reduction.
    fn drain(&mut self) -> bool {
        let mut changed = false;
        while let Some(action) = self.queue.pop_front() {
            match action {
                ForcedAction::Prune => {
                    self.pruned = true;
                    self.queue.clear();
                    return true;
                }
                ForcedAction::Include(x) => {
                    if self.g.is_alive(x) {
                        self.include(x);
                        self.counters.packing += 1;
                        changed = true;
                    }
                }
                ForcedAction::Exclude(x) => {
                    if self.g.is_alive(x) {
                        self.exclude(x);
                        self.counters.packing += 1;
                        changed = true;
                    }
                }
            }
        }
        changed
    }

    fn deg0_pass(&mut self) -> bool {
        let mut applied = false;
        for v in 0..self.g.n_original() {
            if self.g.is_alive(v) && self.g.degree(v) == 0 {
                self.include(v);
                self.counters.deg0 += 1;
                self.drain();
                applied = true;
                if self.pruned {
                    return true;
                }
            }
        }
        applied
    }

    fn deg1_pass(&mut self) -> bool {
        let mut applied = false;
        for v in 0..self.g.n_original() {
            if self.g.is_alive(v) && self.g.degree(v) == 1 {
                self.include(v);
                self.counters.deg1 += 1;
                self.drain();
                applied = true;
                if self.pruned {
                    return true;
                }
            }
        }
        applied
    }

    /// Excludes `u` if some neighbor v satisfies N[v] subset-of N[u].
    fn dominance_pass(&mut self) -> bool {
        let mut applied = false;
        for u in 0..self.g.n_original() {
            if !self.g.is_alive(u) {
                continue;
            }
            self.marks.clear();
            self.marks.set(u);
            for x in self.g.neighbors(u) {
                self.marks.set(x);
            }
            let du = self.g.degree(u);
            let mut dominates = false;
            for v in self.g.neighbors(u) {
                if self.g.degree(v) <= du {
                    let mut inside = true;
                    for x in self.g.neighbors(v) {
                        if !self.marks.get(x) {
                            inside = false;
                            break;
                        }
                    }
                    if inside {
                        dominates = true;
                        break;
                    }
                }
            }
            if dominates {
                self.exclude(u);
                self.counters.dominance += 1;
                self.drain();
                applied = true;
                if self.pruned {
                    return true;
                }
            }
        }
        applied
    }

    fn deg2_pass(&mut self) -> bool {
        let mut applied = false;
        for v in 0..self.g.n_original() {
            if !self.g.is_alive(v) || self.g.degree(v) != 2 {
                continue;
            }
            let mut it = self.g.neighbors(v);
            let u = it.next().unwrap();
            let w = it.next().unwrap();
            drop(it);
            if self.g.has_edge(u, w) {
                // triangle case: v joins the solution, both neighbors leave
                self.include(v);
            } else {
                self.fold_deg2(v, u, w);
            }
            self.counters.deg2_fold += 1;
            self.drain();
            applied = true;
            if self.pruned {
                return true;
            }
        }
        applied
    }

    /// Replaces {v,u,w} by `v`, adjacent to the union of the outer
    /// neighborhoods. Constraints touching any of the three are deactivated:
    /// their membership is decided only at lift time.
    fn fold_deg2(&mut self, v: usize, u: usize, w: usize) {
        let mut targets: Vec<usize> = self
            .g
            .neighbors(u)
            .chain(self.g.neighbors(w))
            .filter(|&x| x != v)
            .collect();
        targets.sort_unstable();
        targets.dedup();
        if let Some(store) = self.store.as_deref_mut() {
            store.deactivate_containing(v);
        }
        self.g.hide_vertex(u);
        self.hook(u, EliminationKind::Deferred);
        self.g.hide_vertex(w);
        self.hook(w, EliminationKind::Deferred);
        for &x in &targets {
            self.g.add_edge(v, x);
        }
        self.trace.push(ReductionEvent::Deg2Fold {
            fold: v,
            left: u,
            right: w,
        });
        self.offset += 1;
    }

    /// Twin detection for degree-3 `v`: looks for u in N^2(v) with the same
    /// neighborhood. While scanning, degree-4 vertices u with
    /// N(v) subset-of N(u) surface the extra vertex as an almost-twin
    /// branch candidate.
    fn twin_pass(&mut self) -> bool {
        let mut applied = false;
        for v in 0..self.g.n_original() {
            if !self.g.is_alive(v) || self.g.degree(v) != 3 {
                continue;
            }
            let nv: Vec<usize> = self.g.neighbors(v).collect();
            self.marks.clear();
            for &x in &nv {
                self.marks.set(x);
            }
            self.marks2.clear();
            let mut twin = None;
            'scan: for &a in &nv {
                for u in self.g.neighbors(a) {
                    if u == v || self.marks.get(u) || self.marks2.get(u) {
                        continue;
                    }
                    self.marks2.set(u);
                    match self.g.degree(u) {
                        3 => {
                            let mut all_in = true;
                            for x in self.g.neighbors(u) {
                                if !self.marks.get(x) {
                                    all_in = false;
                                    break;
                                }
                            }
                            if all_in {
                                twin = Some(u);
                                break 'scan;
                            }
                        }
                        4 => {
                            let mut inside = 0;
                            let mut extra = None;
                            for x in self.g.neighbors(u) {
                                if self.marks.get(x) {
                                    inside += 1;
                                } else {
                                    extra = Some(x);
                                }
                            }
                            if inside == 3 {
                                self.pool.push(extra.unwrap(), SourceRule::Twin);
                            }
                        }
                        _ => {}
                    }
                }
            }
            if let Some(u) = twin {
                let has_inner_edge = self.g.has_edge(nv[0], nv[1])
                    || self.g.has_edge(nv[0], nv[2])
                    || self.g.has_edge(nv[1], nv[2]);
                if has_inner_edge {
                    self.include(u);
                    self.include(v);
                } else {
                    self.fold_twin(v, u, &nv);
                }
                self.counters.twin += 1;
                self.drain();
                applied = true;
                if self.pruned {
                    return true;
                }
            }
        }
        applied
    }

    /// Fold for twins with an independent neighborhood: removes N[{u,v}] and
    /// reuses `u`'s id as the new vertex adjacent to N^2(u).
    fn fold_twin(&mut self, v: usize, u: usize, nv: &[usize]) {
        self.marks.clear();
        self.marks.set(u);
        self.marks.set(v);
        for &x in nv {
            self.marks.set(x);
        }
        let mut targets = Vec::new();
        for &a in nv {
            for x in self.g.neighbors(a) {
                if !self.marks.get(x) {
                    targets.push(x);
                }
            }
        }
        targets.sort_unstable();
        targets.dedup();
        if let Some(store) = self.store.as_deref_mut() {
            store.deactivate_containing(u);
        }
        self.g.hide_vertex(v);
        self.hook(v, EliminationKind::Deferred);
        for &a in nv {
            self.g.hide_vertex(a);
            self.hook(a, EliminationKind::Deferred);
        }
        for &x in &targets {
            self.g.add_edge(u, x);
        }
        self.trace.push(ReductionEvent::TwinFold {
            u,
            v,
            w_new: u,
            saved: nv.to_vec(),
        });
        self.offset += 2;
    }

    /// Runs the confinement check for every vertex, excluding the unconfined
    /// ones. Witnesses recorded at iterations with a single extending child
    /// are verified (rule fires with the witness removed) and pooled when the
    /// vertex itself survives.
    fn unconfined_pass(&mut self) -> bool {
        let mut applied = false;
        for v in 0..self.g.n_original() {
            if !self.g.is_alive(v) {
                continue;
            }
            let mut recorded = Vec::new();
            if self.probe_unconfined(v, None, Some(&mut recorded)) {
                self.exclude(v);
                self.counters.unconfined += 1;
                self.drain();
                applied = true;
                if self.pruned {
                    return true;
                }
            } else {
                for w in recorded {
                    if self.probe_unconfined(v, Some(w), None) {
                        self.pool.push(w, SourceRule::Unconfined);
                    }
                }
            }
        }
        applied
    }

    /// Confinement check with S = {v}, optionally treating `skip` as removed
    /// from the graph. Children with an empty residue prove v unconfined; a
    /// unique extending child's witness is recorded for harvesting.
    fn probe_unconfined(
        &mut self,
        v: usize,
        skip: Option<usize>,
        mut harvest: Option<&mut Vec<usize>>,
    ) -> bool {
        // marks = S, marks2 = N[S]
        self.marks.clear();
        self.marks2.clear();
        let mut members = std::mem::take(&mut self.probe_members);
        members.clear();
        members.push(v);
        self.marks.set(v);
        self.marks2.set(v);
        for x in self.g.neighbors(v) {
            if Some(x) != skip {
                self.marks2.set(x);
            }
        }
        let mut cand = std::mem::take(&mut self.probe_cand);
        let result = 'probe: loop {
            cand.clear();
            for &s in &members {
                for u in self.g.neighbors(s) {
                    if Some(u) == skip || self.marks.get(u) {
                        continue;
                    }
                    cand.push(u);
                }
            }
            cand.sort_unstable();
            let mut extenders: Vec<usize> = Vec::new();
            let mut i = 0;
            while i < cand.len() {
                let u = cand[i];
                let mut j = i;
                while j < cand.len() && cand[j] == u {
                    j += 1;
                }
                let s_neighbors = j - i;
                i = j;
                if s_neighbors != 1 {
                    continue; // not a child of S
                }
                let mut residue = None;
                let mut count = 0;
                for x in self.g.neighbors(u) {
                    if Some(x) == skip || self.marks2.get(x) {
                        continue;
                    }
                    count += 1;
                    if count > 1 {
                        break;
                    }
                    residue = Some(x);
                }
                if count == 0 {
                    break 'probe true;
                }
                if count == 1 {
                    extenders.push(residue.unwrap());
                }
            }
            if extenders.is_empty() {
                break 'probe false;
            }
            if extenders.len() == 1 {
                if let Some(h) = harvest.as_deref_mut() {
                    h.push(extenders[0]);
                }
            }
            let w = extenders[0];
            members.push(w);
            self.marks.set(w);
            self.marks2.set(w);
            for x in self.g.neighbors(w) {
                if Some(x) != skip {
                    self.marks2.set(x);
                }
            }
        };
        self.probe_members = members;
        self.probe_cand = cand;
        result
    }

    fn funnel_pass(&mut self) -> bool {
        let mut applied = false;
        for v in 0..self.g.n_original() {
            if !self.g.is_alive(v) || self.g.degree(v) == 0 {
                continue;
            }
            if !self.funnel_possible(v) {
                continue;
            }
            let nv: Vec<usize> = self.g.neighbors(v).collect();
            for &u in &nv {
                if self.try_funnel(v, u) {
                    self.counters.funnel += 1;
                    self.drain();
                    applied = true;
                    break;
                }
            }
            if self.pruned {
                return true;
            }
        }
        applied
    }

    /// Cheap screen before the quadratic clique scans. A funnel at v leaves
    /// at most one neighbor below within-neighborhood degree d(v)-2, an
    /// almost-funnel at most two below d(v)-3; more than two such neighbors
    /// rule out both detection and harvesting.
    fn funnel_possible(&mut self, v: usize) -> bool {
        let k = self.g.degree(v);
        if k <= 2 {
            return true;
        }
        self.marks.clear();
        for x in self.g.neighbors(v) {
            self.marks.set(x);
        }
        let mut bad = 0;
        for x in self.g.neighbors(v) {
            let mut cnt = 0;
            for y in self.g.neighbors(x) {
                if self.marks.get(y) {
                    cnt += 1;
                }
            }
            if cnt + 3 < k {
                bad += 1;
                if bad > 2 {
                    return false;
                }
            }
        }
        true
    }

    fn is_clique(&self, verts: &[usize]) -> bool {
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if !self.g.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks whether N(v) \ {u} is a clique, applying the alternative
    /// reduction with A = {u}, B = {v} if so. On the first scan failure the
    /// offending vertex (and, when it misses a single predecessor, that
    /// predecessor too) is tested as an almost-funnel witness.
    fn try_funnel(&mut self, v: usize, u: usize) -> bool {
        let ring: Vec<usize> = self.g.neighbors(v).filter(|&x| x != u).collect();
        for i in 1..ring.len() {
            let x = ring[i];
            let mut missed = Vec::new();
            for &p in &ring[..i] {
                if !self.g.has_edge(x, p) {
                    missed.push(p);
                }
            }
            if missed.is_empty() {
                continue;
            }
            let without = |excl: usize| -> Vec<usize> {
                ring.iter().copied().filter(|&y| y != excl).collect()
            };
            if missed.len() >= 2 {
                if self.is_clique(&without(x)) {
                    self.pool.push(x, SourceRule::Funnel);
                }
            } else {
                let xp = missed[0];
                if self.is_clique(&without(x)) {
                    self.pool.push(x, SourceRule::Funnel);
                }
                if self.is_clique(&without(xp)) {
                    self.pool.push(xp, SourceRule::Funnel);
                }
            }
            return false;
        }
        self.apply_alternative(u, v);
        true
    }

    /// Alternative reduction for A = {u}, B = {v}: removes both plus their
    /// common neighbors and joins N(u) \ N[v] completely to N(v) \ N[u].
    fn apply_alternative(&mut self, u: usize, v: usize) {
        self.marks.clear();
        for x in self.g.neighbors(v) {
            self.marks.set(x);
        }
        let mut common = Vec::new();
        let mut frontier_a = Vec::new();
        for x in self.g.neighbors(u) {
            if x == v {
                continue;
            }
            if self.marks.get(x) {
                common.push(x);
            } else {
                frontier_a.push(x);
            }
        }
        self.marks.clear();
        for x in self.g.neighbors(u) {
            self.marks.set(x);
        }
        let frontier_b: Vec<usize> = self
            .g
            .neighbors(v)
            .filter(|&x| x != u && !self.marks.get(x))
            .collect();

        if let Some(store) = self.store.as_deref_mut() {
            store.deactivate_containing(u);
            store.deactivate_containing(v);
        }
        self.g.hide_vertex(u);
        self.hook(u, EliminationKind::Deferred);
        self.g.hide_vertex(v);
        self.hook(v, EliminationKind::Deferred);
        for &c in &common {
            self.g.hide_vertex(c);
            self.hook(c, EliminationKind::Excluded);
        }
        let mut added = Vec::new();
        for &x in &frontier_a {
            for &y in &frontier_b {
                if self.g.add_edge(x, y) {
                    added.push((x, y));
                }
            }
        }
        self.trace.push(ReductionEvent::Alternative {
            a: vec![u],
            b: vec![v],
            removed_common: common,
            added_edges: added,
            frontier_a,
        });
        self.offset += 1;
    }

    /// Re-evaluates every active packing constraint. Candidate emission
    /// happens inside the store's check; the final failing pass therefore
    /// leaves the harvest in the pool.
    fn packing_pass(&mut self) -> bool {
        let n_constraints = match self.store.as_deref() {
            Some(store) => store.len(),
            None => return false,
        };
        let mut applied = false;
        for cid in 0..n_constraints {
            let actions = {
                let store = self.store.as_deref_mut().unwrap();
                if !store.constraint(cid).active {
                    continue;
                }
                store.check(cid, self.g, self.pool)
            };
            self.queue.extend(actions);
            if self.drain() {
                applied = true;
            }
            if self.pruned {
                return true;
            }
        }
        applied
    }
}

#[cfg(test)]
mod tests;
