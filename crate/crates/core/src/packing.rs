//! Packing constraints: inequalities sum(x_v for v in S) >= k created when a
//! branch excludes a vertex, maintained under vertex elimination, and used to
//! force inclusions/exclusions or prune the branch.
//!
//! All store mutations are undo-logged so a branch can restore the store to
//! its checkpoint exactly.

use crate::graph::Graph;
use crate::pool::{BranchCandidatePool, SourceRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForcedAction {
    Include(usize),
    Exclude(usize),
    Prune,
}

/// How a vertex leaves the graph, from the store's point of view.
///
/// `Deferred` covers fold-style reductions (degree-2 fold, twin fold,
/// funnel/alternative) where membership in the solution is only decided when
/// the solution is lifted. A constraint mentioning such a vertex can no
/// longer be tracked soundly with unit coefficients, so it is deactivated
/// for the remainder of the branch instead of being tightened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationKind {
    Included,
    Excluded,
    Deferred,
}

#[derive(Debug, Clone)]
pub struct PackingConstraint {
    /// Variable set S, sorted; only alive vertices remain after eliminations.
    pub vars: Vec<usize>,
    /// Right-hand side k of sum(x_v) >= k.
    pub rhs: i64,
    pub active: bool,
}

enum StoreUndo {
    Created,
    RemovedVar {
        cid: usize,
        pos: usize,
        v: usize,
        rhs_decremented: bool,
    },
    Deactivated {
        cid: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StoreCheckpoint(usize);

pub struct PackingStore {
    constraints: Vec<PackingConstraint>,
    /// vertex -> ids of constraints whose variable set contains it.
    index: Vec<Vec<usize>>,
    undo: Vec<StoreUndo>,
    // stamped scratch for neighbor counting in check()
    cnt_stamp: Vec<u32>,
    cnt_val: Vec<u32>,
    stamp: u32,
}

impl PackingStore {
    pub fn new(n: usize) -> Self {
        PackingStore {
            constraints: Vec::new(),
            index: vec![Vec::new(); n],
            undo: Vec::new(),
            cnt_stamp: vec![0; n],
            cnt_val: vec![0; n],
            stamp: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraint(&self, cid: usize) -> &PackingConstraint {
        &self.constraints[cid]
    }

    pub fn active_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.constraints.len()).filter(move |&i| self.constraints[i].active)
    }

    pub fn checkpoint(&self) -> StoreCheckpoint {
        StoreCheckpoint(self.undo.len())
    }

    pub fn restore(&mut self, cp: StoreCheckpoint) {
        assert!(cp.0 <= self.undo.len(), "restore: stale store checkpoint");
        while self.undo.len() > cp.0 {
            match self.undo.pop().unwrap() {
                StoreUndo::Created => {
                    let cid = self.constraints.len() - 1;
                    let c = self.constraints.pop().unwrap();
                    for v in c.vars {
                        let popped = self.index[v].pop();
                        debug_assert_eq!(popped, Some(cid));
                    }
                }
                StoreUndo::RemovedVar {
                    cid,
                    pos,
                    v,
                    rhs_decremented,
                } => {
                    let c = &mut self.constraints[cid];
                    c.vars.insert(pos, v);
                    if rhs_decremented {
                        c.rhs += 1;
                    }
                }
                StoreUndo::Deactivated { cid } => {
                    self.constraints[cid].active = true;
                }
            }
        }
    }

    fn deactivate(&mut self, cid: usize) {
        if self.constraints[cid].active {
            self.constraints[cid].active = false;
            self.undo.push(StoreUndo::Deactivated { cid });
        }
    }

    /// Deactivates every active constraint whose variable set contains `v`.
    /// Used when a fold changes what `v`'s indicator variable means.
    pub fn deactivate_containing(&mut self, v: usize) {
        let cids: Vec<usize> = self.index[v].clone();
        for cid in cids {
            self.deactivate(cid);
        }
    }

    /// Registers sum(x_u for u in N(v)) >= 2 when the excluding branch at `v`
    /// is taken. `neighbors` is the alive neighborhood snapshot.
    pub fn add_exclude_constraint(&mut self, _v: usize, neighbors: &[usize]) {
        let mut vars = neighbors.to_vec();
        vars.sort_unstable();
        let cid = self.constraints.len();
        for &u in &vars {
            self.index[u].push(cid);
        }
        self.constraints.push(PackingConstraint {
            vars,
            rhs: 2,
            active: true,
        });
        self.undo.push(StoreUndo::Created);
    }

    /// Updates constraints when `v` leaves the graph and returns any actions
    /// forced by the constraints that became tight.
    pub fn on_eliminate(
        &mut self,
        v: usize,
        kind: EliminationKind,
        g: &Graph,
        pool: &mut BranchCandidatePool,
    ) -> Vec<ForcedAction> {
        let mut actions = Vec::new();
        let cids: Vec<usize> = self.index[v].clone();
        for cid in cids {
            if !self.constraints[cid].active {
                continue;
            }
            match kind {
                EliminationKind::Deferred => {
                    self.deactivate(cid);
                }
                EliminationKind::Included | EliminationKind::Excluded => {
                    let c = &mut self.constraints[cid];
                    let pos = match c.vars.binary_search(&v) {
                        Ok(p) => p,
                        // already purged by an earlier event in this cascade
                        Err(_) => continue,
                    };
                    c.vars.remove(pos);
                    let dec = kind == EliminationKind::Included;
                    if dec {
                        c.rhs -= 1;
                    }
                    self.undo.push(StoreUndo::RemovedVar {
                        cid,
                        pos,
                        v,
                        rhs_decremented: dec,
                    });
                    actions.extend(self.check(cid, g, pool));
                }
            }
        }
        actions
    }

    /// Evaluates one constraint. Emits forced actions and, as a side channel,
    /// branch candidates for the packing strategy:
    /// all of S when |S| = k + 1, and S \ N(x) when |S| - |N(x) cap S| = k.
    pub fn check(
        &mut self,
        cid: usize,
        g: &Graph,
        pool: &mut BranchCandidatePool,
    ) -> Vec<ForcedAction> {
        if !self.constraints[cid].active {
            return Vec::new();
        }
        if self.constraints[cid].rhs <= 0 {
            self.deactivate(cid);
            return Vec::new();
        }
        let (k, s) = {
            let c = &self.constraints[cid];
            (c.rhs as usize, c.vars.len())
        };
        if k > s {
            return vec![ForcedAction::Prune];
        }
        if k == s {
            let vars = &self.constraints[cid].vars;
            for (i, &u) in vars.iter().enumerate() {
                for &w in &vars[i + 1..] {
                    if g.has_edge(u, w) {
                        return vec![ForcedAction::Prune];
                    }
                }
            }
            return vars.iter().map(|&u| ForcedAction::Include(u)).collect();
        }
        // k < s: count |N(x) cap S| for every alive x with a neighbor in S
        self.stamp = self.stamp.checked_add(1).unwrap_or_else(|| {
            self.cnt_stamp.fill(0);
            1
        });
        let stamp = self.stamp;
        let vars = &self.constraints[cid].vars;
        if s == k + 1 {
            for &u in vars {
                pool.push(u, SourceRule::Packing);
            }
        }
        let mut touched: Vec<usize> = Vec::new();
        for &u in vars {
            for x in g.neighbors(u) {
                if self.cnt_stamp[x] != stamp {
                    self.cnt_stamp[x] = stamp;
                    self.cnt_val[x] = 0;
                    touched.push(x);
                }
                self.cnt_val[x] += 1;
            }
        }
        touched.sort_unstable();
        let mut actions = Vec::new();
        for &x in &touched {
            let cx = self.cnt_val[x] as usize;
            if s - cx < k {
                actions.push(ForcedAction::Exclude(x));
            } else if s - cx == k {
                for &u in vars {
                    if u != x && !g.has_edge(u, x) {
                        pool.push(u, SourceRule::Packing);
                    }
                }
                if vars.binary_search(&x).is_ok() {
                    pool.push(x, SourceRule::Packing);
                }
            }
        }
        actions
    }
}
