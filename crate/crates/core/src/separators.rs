//! Separator machinery for decomposition branching: articulation points,
//! unit-capacity minimum s-t cuts, cut-to-vertex-separator conversion via a
//! bipartite vertex cover (Konig), and a 3-level nested dissection order
//! built from flow-based bisections.

use crate::graph::Graph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;

/// Edge-cut separators larger than this are rejected.
pub const MAX_EDGE_CUT_SEPARATOR: usize = 25;
/// The smaller side must hold at least this percentage of the vertices that
/// remain after removing the separator.
pub const MIN_SIDE_PERCENT: usize = 10;
/// After a rejected cut the edge-cut strategy skips this many branching steps.
pub const EDGE_CUT_SKIP_STEPS: u32 = 10;
/// Nested dissection recursion depth.
pub const ND_LEVELS: usize = 3;
/// Nested dissection separators larger than this abort the dissection level.
pub const ND_MAX_SEPARATOR: usize = 50;
/// The smaller part of each bisection must hold at least this percentage of
/// the bisected subgraph.
pub const ND_MIN_BALANCE_PERCENT: usize = 40;

const ND_BISECT_ATTEMPTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorSource {
    Articulation,
    EdgeCut,
    NestedDissection,
}

#[derive(Debug, Clone)]
pub struct Separator {
    /// Sorted vertex ids whose removal disconnects the graph they were
    /// computed on.
    pub vertices: Vec<usize>,
    /// Sizes of the two cut sides after removing the separator.
    pub side_sizes: (usize, usize),
    pub source: SeparatorSource,
}

/// Computes the articulation points of the alive subgraph with an iterative
/// lowpoint DFS: the root of a DFS tree qualifies with two or more children,
/// any other vertex with a child subtree lacking a back edge above it.
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let n = g.n_original();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut is_ap = vec![false; n];
    let mut timer = 1usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();

    for root in g.vertices() {
        if disc[root] != 0 {
            continue;
        }
        let mut root_children = 0usize;
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, 0));
        while let Some(&(v, pos)) = stack.last() {
            let raw = g.adjacency_raw(v);
            let mut next_child = None;
            let mut p = pos;
            while p < raw.len() {
                let u = raw[p];
                p += 1;
                if !g.is_alive(u) {
                    continue;
                }
                if disc[u] == 0 {
                    next_child = Some(u);
                    break;
                }
                if u != parent[v] {
                    low[v] = low[v].min(disc[u]);
                }
            }
            stack.last_mut().unwrap().1 = p;
            match next_child {
                Some(u) => {
                    parent[u] = v;
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, 0));
                }
                None => {
                    stack.pop();
                    if let Some(&(pp, _)) = stack.last() {
                        low[pp] = low[pp].min(low[v]);
                        if pp != root && low[v] >= disc[pp] {
                            is_ap[pp] = true;
                        }
                    }
                }
            }
        }
        if root_children >= 2 {
            is_ap[root] = true;
        }
    }
    (0..n).filter(|&v| is_ap[v]).collect()
}

/// Result of a unit-capacity minimum s-t cut.
pub struct StCut {
    /// Cut edges oriented (s-side endpoint, t-side endpoint), original ids.
    pub edges: Vec<(usize, usize)>,
    /// Vertices residually reachable from s after the maximum flow.
    pub s_side: Vec<usize>,
}

/// Minimum-cardinality s-t edge cut by repeated shortest augmenting paths
/// over unit capacities. The cut is read off the final residual reachability.
pub fn min_st_cut(g: &Graph, s: usize, t: usize) -> StCut {
    assert!(s != t, "min_st_cut: s == t");
    assert!(g.is_alive(s) && g.is_alive(t), "min_st_cut: dead terminal");

    let verts: Vec<usize> = g.vertices().collect();
    let mut index = vec![usize::MAX; g.n_original()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let n = verts.len();
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut to: Vec<usize> = Vec::new();
    let mut cap: Vec<i32> = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        for u in g.neighbors(v) {
            if u > v {
                let j = index[u];
                head[i].push(to.len());
                to.push(j);
                cap.push(1);
                head[j].push(to.len());
                to.push(i);
                cap.push(1);
            }
        }
    }
    let (si, ti) = (index[s], index[t]);

    let mut parent_arc = vec![usize::MAX; n];
    loop {
        parent_arc.fill(usize::MAX);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(si);
        parent_arc[si] = usize::MAX - 1;
        let mut reached = false;
        'bfs: while let Some(v) = queue.pop_front() {
            for &a in &head[v] {
                if cap[a] > 0 && parent_arc[to[a]] == usize::MAX {
                    parent_arc[to[a]] = a;
                    if to[a] == ti {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(to[a]);
                }
            }
        }
        if !reached {
            break;
        }
        let mut v = ti;
        while v != si {
            let a = parent_arc[v];
            cap[a] -= 1;
            cap[a ^ 1] += 1;
            v = to[a ^ 1];
        }
    }

    // residual reachability marks the s side
    let mut reach = vec![false; n];
    reach[si] = true;
    let mut queue = vec![si];
    while let Some(v) = queue.pop() {
        for &a in &head[v] {
            if cap[a] > 0 && !reach[to[a]] {
                reach[to[a]] = true;
                queue.push(to[a]);
            }
        }
    }
    let mut edges = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        if !reach[i] {
            continue;
        }
        for u in g.neighbors(v) {
            if !reach[index[u]] {
                edges.push((v, u));
            }
        }
    }
    edges.sort_unstable();
    let s_side: Vec<usize> = verts
        .iter()
        .enumerate()
        .filter(|&(i, _)| reach[i])
        .map(|(_, &v)| v)
        .collect();
    StCut { edges, s_side }
}

/// Turns an s-t cut into a vertex separator: a minimum vertex cover of the
/// bipartite graph induced by the cut edges, extracted from a maximum
/// matching by the alternating-reachability construction.
pub fn cut_to_separator(g: &Graph, cut: &StCut, source: SeparatorSource) -> Separator {
    let mut left: Vec<usize> = cut.edges.iter().map(|e| e.0).collect();
    left.sort_unstable();
    left.dedup();
    let mut right: Vec<usize> = cut.edges.iter().map(|e| e.1).collect();
    right.sort_unstable();
    right.dedup();
    let lidx = |v: usize| left.binary_search(&v).unwrap();
    let ridx = |v: usize| right.binary_search(&v).unwrap();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left.len()];
    for &(u, v) in &cut.edges {
        adj[lidx(u)].push(ridx(v));
    }

    // augmenting-path maximum matching, left to right
    let mut match_l = vec![usize::MAX; left.len()];
    let mut match_r = vec![usize::MAX; right.len()];
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        match_l: &mut [usize],
        match_r: &mut [usize],
        seen: &mut [bool],
    ) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if match_r[r] == usize::MAX
                || augment(match_r[r], adj, match_l, match_r, seen)
            {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        false
    }
    for l in 0..left.len() {
        let mut seen = vec![false; right.len()];
        augment(l, &adj, &mut match_l, &mut match_r, &mut seen);
    }

    // Konig: alternate from unmatched left vertices; the cover is the
    // unreached lefts plus the reached rights.
    let mut zl = vec![false; left.len()];
    let mut zr = vec![false; right.len()];
    let mut stack: Vec<usize> = (0..left.len())
        .filter(|&l| match_l[l] == usize::MAX)
        .collect();
    for &l in &stack {
        zl[l] = true;
    }
    while let Some(l) = stack.pop() {
        for &r in &adj[l] {
            if !zr[r] {
                zr[r] = true;
                let ml = match_r[r];
                if ml != usize::MAX && !zl[ml] {
                    zl[ml] = true;
                    stack.push(ml);
                }
            }
        }
    }
    let mut vertices: Vec<usize> = Vec::new();
    for (l, &v) in left.iter().enumerate() {
        if !zl[l] {
            vertices.push(v);
        }
    }
    for (r, &v) in right.iter().enumerate() {
        if zr[r] {
            vertices.push(v);
        }
    }
    vertices.sort_unstable();

    let in_sep = |v: usize| vertices.binary_search(&v).is_ok();
    let s_total = cut.s_side.len();
    let sep_in_s = cut.s_side.iter().filter(|&&v| in_sep(v)).count();
    let t_total = g.alive_count() - s_total;
    let side_sizes = (
        s_total - sep_in_s,
        t_total - (vertices.len() - sep_in_s),
    );
    Separator {
        vertices,
        side_sizes,
        source,
    }
}

/// One attempt at a branching separator: a min cut between two random
/// max-degree vertices, accepted only within the size and balance thresholds.
pub fn find_branching_separator(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Separator> {
    if g.alive_count() < 2 {
        return None;
    }
    let delta = g.max_degree();
    let max_set: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == delta).collect();
    if max_set.len() < 2 {
        return None;
    }
    let i = rng.gen_range(0..max_set.len());
    let mut j = rng.gen_range(0..max_set.len() - 1);
    if j >= i {
        j += 1;
    }
    let (s, t) = (max_set[i], max_set[j]);
    let cut = min_st_cut(g, s, t);
    if cut.edges.is_empty() {
        return None;
    }
    let sep = cut_to_separator(g, &cut, SeparatorSource::EdgeCut);
    let remaining = g.alive_count() - sep.vertices.len();
    let min_side = sep.side_sizes.0.min(sep.side_sizes.1);
    if sep.vertices.len() <= MAX_EDGE_CUT_SEPARATOR
        && min_side > 0
        && min_side * 100 >= MIN_SIDE_PERCENT * remaining
    {
        Some(sep)
    } else {
        None
    }
}

#[derive(Debug, Clone)]
pub struct NDOrder {
    /// Separators in construction order, root level first.
    pub levels: Vec<Separator>,
    /// Branching consumption order: root separator first, each separator's
    /// vertices by descending degree at construction time.
    pub order: Vec<usize>,
}

/// Builds up to `ND_LEVELS` of recursive flow-based bisections. A failure at
/// the root yields no order; deeper parts that cannot be split within the
/// thresholds are simply not deepened. Disconnected input dissects the
/// largest component only.
pub fn nested_dissection_order(g: &Graph, rng: &mut ChaCha8Rng) -> Option<NDOrder> {
    if g.alive_count() == 0 {
        return None;
    }
    let comps = g.connected_components();
    let root_part = comps.into_iter().max_by_key(|c| c.len()).unwrap();

    let mut levels: Vec<Separator> = Vec::new();
    let mut current = vec![root_part];
    for level in 0..ND_LEVELS {
        let mut next = Vec::new();
        let mut found = false;
        for part in &current {
            if part.len() < 2 {
                continue;
            }
            if let Some((sep, side_a, side_b)) = bisect_part(g, part, rng) {
                found = true;
                levels.push(sep);
                next.push(side_a);
                next.push(side_b);
            }
        }
        if level == 0 && !found {
            return None;
        }
        current = next;
        if current.is_empty() {
            break;
        }
    }
    let mut order = Vec::new();
    for sep in &levels {
        let mut vs = sep.vertices.clone();
        vs.sort_by_key(|&v| (Reverse(g.degree(v)), v));
        order.extend(vs);
    }
    Some(NDOrder { levels, order })
}

/// Flow-based bisection of one part: several s-t cut attempts between a
/// random max-degree seed and a far-apart max-degree vertex, keeping the
/// best-balance separator that satisfies the thresholds.
fn bisect_part(
    g: &Graph,
    part: &[usize],
    rng: &mut ChaCha8Rng,
) -> Option<(Separator, Vec<usize>, Vec<usize>)> {
    let (sub, _map) = g.induced_subgraph(part);
    let back: Vec<usize> = {
        let mut sorted = part.to_vec();
        sorted.sort_unstable();
        sorted
    };
    let n_sub = back.len();
    let delta = sub.max_degree();
    if delta == 0 {
        return None;
    }
    let max_set: Vec<usize> = sub.vertices().filter(|&v| sub.degree(v) == delta).collect();

    let mut best: Option<(usize, Separator, Vec<usize>)> = None;
    for _ in 0..ND_BISECT_ATTEMPTS {
        let s = max_set[rng.gen_range(0..max_set.len())];
        let Some(t) = bfs_farthest(&sub, s) else {
            continue;
        };
        if t == s {
            continue;
        }
        let cut = min_st_cut(&sub, s, t);
        if cut.edges.is_empty() {
            continue;
        }
        let sep = cut_to_separator(&sub, &cut, SeparatorSource::NestedDissection);
        if sep.vertices.len() > ND_MAX_SEPARATOR {
            continue;
        }
        let min_side = sep.side_sizes.0.min(sep.side_sizes.1);
        if min_side * 100 < ND_MIN_BALANCE_PERCENT * n_sub {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, s0, _)) => {
                min_side > *b || (min_side == *b && sep.vertices.len() < s0.vertices.len())
            }
        };
        if better {
            best = Some((min_side, sep, cut.s_side.clone()));
        }
    }
    let (_, sep_sub, s_side_sub) = best?;
    let in_sep_sub = |v: usize| sep_sub.vertices.binary_search(&v).is_ok();
    let vertices: Vec<usize> = sep_sub.vertices.iter().map(|&v| back[v]).collect();
    let mut side_a = Vec::new();
    let mut in_a = vec![false; n_sub];
    for &v in &s_side_sub {
        if !in_sep_sub(v) {
            in_a[v] = true;
            side_a.push(back[v]);
        }
    }
    let side_b: Vec<usize> = (0..n_sub)
        .filter(|&v| !in_a[v] && !in_sep_sub(v))
        .map(|v| back[v])
        .collect();
    let sep = Separator {
        vertices,
        side_sizes: sep_sub.side_sizes,
        source: SeparatorSource::NestedDissection,
    };
    Some((sep, side_a, side_b))
}

/// Farthest vertex from `s` by BFS; among the last layer the one of maximum
/// degree, ties by smallest id. None when `s` is isolated.
fn bfs_farthest(g: &Graph, s: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n_original()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(s);
    let mut last_layer = vec![s];
    let mut last_dist = 0;
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                if dist[u] > last_dist {
                    last_dist = dist[u];
                    last_layer.clear();
                }
                if dist[u] == last_dist {
                    last_layer.push(u);
                }
                queue.push_back(u);
            }
        }
    }
    if last_dist == 0 {
        return None;
    }
    last_layer
        .into_iter()
        .max_by_key(|&v| (g.degree(v), Reverse(v)))
}
