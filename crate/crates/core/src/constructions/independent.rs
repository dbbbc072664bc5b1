use crate::cube::{halved_cube, Parity, VertexSet};
use crate::error::{Error, Result};

/// Greedy clique cover of `cand`; its size bounds the independence number.
fn clique_cover_size(adj: &[u64], mut cand: u64) -> u32 {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut clique_cands = cand & adj[v];
        cand &= !(1u64 << v);
        while clique_cands != 0 {
            let w = clique_cands.trailing_zeros() as usize;
            cand &= !(1u64 << w);
            clique_cands &= adj[w];
        }
        cliques += 1;
    }
    cliques
}

struct MisSearch<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
    nodes: u64,
}

impl MisSearch<'_> {
    fn expand(&mut self, cand: u64, cur: u64, size: u32) {
        self.nodes += 1;
        if cand == 0 {
            if size > self.best_size {
                self.best = cur;
                self.best_size = size;
            }
            return;
        }
        if size + clique_cover_size(self.adj, cand) <= self.best_size {
            return;
        }
        // branch on the candidate with most candidate neighbors
        let mut pick = 0usize;
        let mut pick_deg = -1i32;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let deg = (self.adj[v] & cand).count_ones() as i32;
            if deg > pick_deg {
                pick = v;
                pick_deg = deg;
            }
        }
        let bit = 1u64 << pick;
        self.expand(cand & !bit & !self.adj[pick], cur | bit, size + 1);
        self.expand(cand & !bit, cur, size);
    }
}

/// Exact maximum independent set of a graph on at most 64 vertices given by
/// adjacency bitmasks. Returns the member mask and the search node count.
pub fn max_independent_set(adj: &[u64]) -> Result<(u64, u64)> {
    if adj.len() > 64 {
        return Err(Error::Precondition(format!(
            "independence solver handles at most 64 vertices, got {}",
            adj.len()
        )));
    }
    let all = if adj.len() == 64 {
        u64::MAX
    } else {
        (1u64 << adj.len()) - 1
    };
    let mut search = MisSearch {
        adj,
        best: 0,
        best_size: 0,
        nodes: 0,
    };
    search.expand(all, 0, 0);
    Ok((search.best, search.nodes))
}

/// `α` of the even halved cube, with a witness set of `Q_h` vertices.
pub fn max_independent_halved(h: u32) -> Result<(usize, VertexSet)> {
    if !(2..=7).contains(&h) {
        return Err(Error::OutOfRange {
            what: "halved cube dimension for brute force",
            value: h as i64,
            lo: 2,
            hi: 7,
        });
    }
    let graph = halved_cube(h, Parity::Even)?;
    let adj = graph
        .adjacency_masks()
        .expect("h <= 7 has at most 64 vertices");
    let (mask, _) = max_independent_set(&adj)?;
    let mut set = VertexSet::with_dim(h);
    for (i, &v) in graph.vertices().iter().enumerate() {
        if mask >> i & 1 == 1 {
            set.insert(v);
        }
    }
    Ok((set.len(), set))
}

/// Independence number of the halved cube by exact branch and bound.
pub fn alpha_halved_bruteforce(h: u32) -> Result<usize> {
    max_independent_halved(h).map(|(a, _)| a)
}
