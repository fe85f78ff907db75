//! Brute-force maximum independent set, used as the verification oracle.
//!
//! Kept deliberately independent of the solver: plain bitmask recursion over
//! (exclude v | include v, drop N[v]) with only the trivial remaining-count
//! cut. Refuses graphs with more than 30 alive vertices.

use crate::graph::Graph;
use std::error::Error;
use std::fmt;

pub const ORACLE_MAX_VERTICES: usize = 30;

#[derive(Debug)]
pub struct TooLarge(pub usize);

impl fmt::Display for TooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "oracle refuses {} alive vertices (limit {})",
            self.0, ORACLE_MAX_VERTICES
        )
    }
}

impl Error for TooLarge {}

pub struct OracleResult {
    pub alpha: usize,
    /// Independent set of size `alpha`, in original vertex ids.
    pub witness: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [u64],
    best: usize,
    best_set: u64,
}

impl Search<'_> {
    fn go(&mut self, cands: u64, cur: u64, cur_size: usize) {
        if cur_size + cands.count_ones() as usize <= self.best {
            return;
        }
        if cands == 0 {
            self.best = cur_size;
            self.best_set = cur;
            return;
        }
        let v = cands.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.go(cands & !bit & !self.adj[v], cur | bit, cur_size + 1);
        self.go(cands & !bit, cur, cur_size);
    }
}

/// Exact alpha of the alive subgraph by exhaustive search.
pub fn brute_force_mis(g: &Graph) -> Result<OracleResult, TooLarge> {
    let verts: Vec<usize> = g.vertices().collect();
    if verts.len() > ORACLE_MAX_VERTICES {
        return Err(TooLarge(verts.len()));
    }
    let mut index = vec![usize::MAX; g.n_original()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut adj = vec![0u64; verts.len()];
    for (i, &v) in verts.iter().enumerate() {
        for u in g.neighbors(v) {
            adj[i] |= 1u64 << index[u];
        }
    }
    let mut s = Search {
        adj: &adj,
        best: 0,
        best_set: 0,
    };
    let full = if verts.is_empty() {
        0
    } else {
        (!0u64) >> (64 - verts.len())
    };
    s.go(full, 0, 0);
    let witness: Vec<usize> = (0..verts.len())
        .filter(|&i| s.best_set >> i & 1 == 1)
        .map(|i| verts[i])
        .collect();
    Ok(OracleResult {
        alpha: s.best,
        witness,
    })
}
