//! Bounds used for pruning: a greedy clique cover gives an upper bound on
//! the independence number, a min-degree greedy independent set seeds the
//! incumbent.

use crate::graph::Graph;

/// Partitions the alive vertices greedily into cliques, processing vertices
/// in descending degree (ties by id) and placing each into the first clique
/// it completes. The number of cliques bounds alpha from above.
pub fn clique_cover_ub(g: &Graph) -> usize {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for v in order {
        let mut placed = false;
        for clique in cliques.iter_mut() {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
                placed = true;
                break;
            }
        }
        if !placed {
            cliques.push(vec![v]);
        }
    }
    cliques.len()
}

/// Greedy independent set: repeatedly takes a minimum-degree alive vertex
/// (ties by id) and deletes its closed neighborhood. Works on the graph's
/// undo stack, so the graph is unchanged on return.
pub fn greedy_lb(g: &mut Graph) -> Vec<usize> {
    let cp = g.checkpoint();
    let mut picked = Vec::new();
    while g.alive_count() > 0 {
        let v = g
            .vertices()
            .min_by_key(|&v| (g.degree(v), v))
            .expect("alive_count > 0");
        picked.push(v);
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        g.hide_vertex(v);
        for u in nbrs {
            g.hide_vertex(u);
        }
    }
    g.restore(cp);
    picked.sort_unstable();
    picked
}
