//! Mutable undirected simple graph with O(1) degree queries and a
//! stack-disciplined undo log for backtracking search.
//!
//! Vertex removal marks instead of compacting: adjacency lists keep dead
//! entries and iteration filters them, so a hide is O(deg) and its undo is
//! exact. Edge additions (from fold-style reductions) are logged the same
//! way and removed again on restore.

use std::error::Error;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UndoOp {
    Hide(usize),
    AddEdge(usize, usize),
}

/// Position in the undo log. Restoring to a checkpoint must happen in LIFO
/// order relative to when checkpoints were taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Checkpoint(usize);

#[derive(Debug)]
pub struct VertexOutOfRange {
    pub vertex: usize,
    pub n: usize,
}

impl fmt::Display for VertexOutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex id {} out of range for n = {}", self.vertex, self.n)
    }
}

impl Error for VertexOutOfRange {}

#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    degree: Vec<usize>,
    alive_count: usize,
    undo: Vec<UndoOp>,
}

impl Graph {
    /// Builds a simple graph on `n` vertices. Duplicate pairs (in either
    /// orientation) and self-loops are dropped.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, VertexOutOfRange> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        let degree: Vec<usize> = adj.iter().map(|l| l.len()).collect();
        Ok(Graph {
            adj,
            alive: vec![true; n],
            degree,
            alive_count: n,
            undo: Vec::new(),
        })
    }

    /// Number of vertices at construction time (dead ones included).
    pub fn n_original(&self) -> usize {
        self.adj.len()
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    /// Degree of an alive vertex, counting alive neighbors only.
    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    /// Iterates alive vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(move |&v| self.alive[v])
    }

    /// Iterates alive neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied().filter(move |&u| self.alive[u])
    }

    /// Raw adjacency list of `v`, sorted, possibly containing dead entries.
    /// Callers that need index-based iteration filter with `is_alive`.
    pub fn adjacency_raw(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Maximum degree over alive vertices, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree[v]).max().unwrap_or(0)
    }

    /// Number of alive edges.
    pub fn edge_count(&self) -> usize {
        let total: usize = self.vertices().map(|v| self.degree[v]).sum();
        total / 2
    }

    /// True iff `u` and `v` are alive and adjacent.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.alive[u] && self.alive[v] && self.adj[u].binary_search(&v).is_ok()
    }

    /// Removes `v` from the alive set. Neighbor degrees are decremented;
    /// adjacency lists are untouched so the hide is exactly reversible.
    pub fn hide_vertex(&mut self, v: usize) {
        assert!(self.alive[v], "hide_vertex: vertex {v} is not alive");
        self.alive[v] = false;
        self.alive_count -= 1;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.alive[u] {
                self.degree[u] -= 1;
            }
        }
        self.undo.push(UndoOp::Hide(v));
    }

    /// Inserts edge {u,v} if absent. Returns true when the structure changed;
    /// an undo entry is pushed only in that case.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "add_edge: self-loop at {u}");
        assert!(self.alive[u] && self.alive[v], "add_edge: dead endpoint");
        let pos = match self.adj[u].binary_search(&v) {
            Ok(_) => return false,
            Err(p) => p,
        };
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.undo.push(UndoOp::AddEdge(u, v));
        true
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint(self.undo.len())
    }

    /// Rolls the graph back to the state at `cp`.
    pub fn restore(&mut self, cp: Checkpoint) {
        assert!(
            cp.0 <= self.undo.len(),
            "restore: stale checkpoint (log already popped past it)"
        );
        while self.undo.len() > cp.0 {
            match self.undo.pop().unwrap() {
                UndoOp::Hide(v) => {
                    self.alive[v] = true;
                    self.alive_count += 1;
                    for i in 0..self.adj[v].len() {
                        let u = self.adj[v][i];
                        if self.alive[u] {
                            self.degree[u] += 1;
                        }
                    }
                }
                UndoOp::AddEdge(u, v) => {
                    let pos = self.adj[u].binary_search(&v).unwrap();
                    self.adj[u].remove(pos);
                    let pos = self.adj[v].binary_search(&u).unwrap();
                    self.adj[v].remove(pos);
                    self.degree[u] -= 1;
                    self.degree[v] -= 1;
                }
            }
        }
    }

    /// Partitions the alive vertices into connected components. Components
    /// are ordered by their smallest member; members are ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if !self.alive[root] || seen[root] {
                continue;
            }
            let mut comp = Vec::new();
            seen[root] = true;
            stack.push(root);
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Extracts the subgraph induced by `vs` as a compact graph. The second
    /// return value maps old ids to new ids (`None` for vertices not in `vs`).
    pub fn induced_subgraph(&self, vs: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut sorted: Vec<usize> = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut map = vec![None; self.adj.len()];
        for (new, &old) in sorted.iter().enumerate() {
            assert!(self.alive[old], "induced_subgraph: dead vertex {old}");
            map[old] = Some(new);
        }
        let mut edges = Vec::new();
        for (new_u, &old_u) in sorted.iter().enumerate() {
            for old_v in self.neighbors(old_u) {
                if old_v > old_u {
                    if let Some(new_v) = map[old_v] {
                        edges.push((new_u, new_v));
                    }
                }
            }
        }
        let g = Graph::build(sorted.len(), &edges).expect("ids are in range by construction");
        (g, map)
    }
}

/// True iff `vs` is an independent set among the currently alive vertices.
pub fn is_independent_set(g: &Graph, vs: &[usize]) -> bool {
    for (i, &u) in vs.iter().enumerate() {
        if !g.is_alive(u) {
            return false;
        }
        for &v in &vs[i + 1..] {
            if g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn snapshot(g: &Graph) -> (Vec<Vec<usize>>, Vec<bool>, Vec<usize>, usize) {
        (g.adj.clone(), g.alive.clone(), g.degree.clone(), g.alive_count)
    }

    #[test]
    fn build_dedups_and_drops_self_loops() {
        let g = Graph::build(3, &[(0, 1), (1, 0), (1, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn build_empty_and_triangle() {
        let g = Graph::build(5, &[]).unwrap();
        assert_eq!(g.alive_count(), 5);
        assert_eq!(g.max_degree(), 0);

        let t = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(t.vertices().all(|v| t.degree(v) == 2));
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert!(Graph::build(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn hide_updates_degrees() {
        // P3: 0-1-2, hide the middle vertex
        let mut g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        g.hide_vertex(1);
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.degree(2), 0);
        assert_eq!(g.alive_count(), 2);

        // triangle, hide 0 -> single edge
        let mut t = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        t.hide_vertex(0);
        assert!(t.has_edge(1, 2));
        assert_eq!(t.degree(1), 1);

        // star center hidden -> isolated leaves
        let mut s = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        s.hide_vertex(0);
        assert!(s.vertices().all(|v| s.degree(v) == 0));
    }

    #[test]
    #[should_panic]
    fn hide_dead_vertex_panics() {
        let mut g = Graph::build(2, &[(0, 1)]).unwrap();
        g.hide_vertex(0);
        g.hide_vertex(0);
    }

    #[test]
    fn add_edge_is_idempotent() {
        let mut g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let cp = g.checkpoint();
        assert!(g.add_edge(0, 2));
        assert!(g.has_edge(0, 2));
        assert!(!g.add_edge(0, 1)); // present already, no undo entry
        g.restore(cp);
        assert!(!g.has_edge(0, 2));

        let mut h = Graph::build(2, &[]).unwrap();
        h.add_edge(0, 1);
        assert_eq!(h.degree(0), 1);
        assert_eq!(h.degree(1), 1);
    }

    #[test]
    fn restore_roundtrip() {
        let mut g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let before = snapshot(&g);
        let cp = g.checkpoint();
        g.hide_vertex(1);
        g.hide_vertex(3);
        g.hide_vertex(0);
        g.restore(cp);
        assert_eq!(snapshot(&g), before);

        let cp = g.checkpoint();
        g.add_edge(0, 4);
        g.hide_vertex(2);
        g.restore(cp);
        assert_eq!(snapshot(&g), before);

        // restoring immediately is a no-op
        let cp = g.checkpoint();
        g.restore(cp);
        assert_eq!(snapshot(&g), before);
    }

    #[test]
    fn restore_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(2..14);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let mut g = Graph::build(n, &edges).unwrap();
            let before = snapshot(&g);
            let cp = g.checkpoint();
            for _ in 0..rng.gen_range(1..20) {
                let alive: Vec<usize> = g.vertices().collect();
                if alive.len() < 2 {
                    break;
                }
                if rng.gen_bool(0.6) {
                    let v = alive[rng.gen_range(0..alive.len())];
                    g.hide_vertex(v);
                } else {
                    let u = alive[rng.gen_range(0..alive.len())];
                    let v = alive[rng.gen_range(0..alive.len())];
                    if u != v {
                        g.add_edge(u, v);
                    }
                }
                // degree cache stays consistent mid-sequence
                for v in g.vertices() {
                    assert_eq!(g.degree(v), g.neighbors(v).count());
                }
                let deg_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
                assert_eq!(deg_sum, 2 * g.edge_count());
            }
            g.restore(cp);
            assert_eq!(snapshot(&g), before);
        }
    }

    #[test]
    fn components_partition_alive_vertices() {
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2]]);

        let mut h = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        h.hide_vertex(1);
        assert_eq!(h.connected_components(), vec![vec![0], vec![2]]);

        let two = Graph::build(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn induced_subgraph_examples() {
        let t = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let (sub, map) = t.induced_subgraph(&[0, 1]);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(map[0], Some(0));
        assert_eq!(map[2], None);

        let p5 = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (sub, _) = p5.induced_subgraph(&[0, 2, 4]);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(sub.n_original(), 3);

        let (copy, _) = p5.induced_subgraph(&p5.vertices().collect::<Vec<_>>());
        assert_eq!(copy.edge_count(), p5.edge_count());
    }
}
