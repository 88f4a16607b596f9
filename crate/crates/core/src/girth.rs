//! ex(n, {C3,..,Cs}): the most edges in a simple n-vertex graph with no cycle
//! of length at most s.
//!
//! Vertices are added one at a time. A new vertex may join any set of earlier
//! vertices at pairwise distance at least s-1, since two such neighbours at
//! distance d close a cycle of length d+2. A branch is cut when its edges
//! plus ex(remaining vertices) plus (remaining vertices) times the largest
//! admissible neighbour set cannot beat the best graph so far.

use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::multigraph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthResult {
    pub edges: usize,
    /// A 0/1 multigraph attaining `edges`.
    pub witness: Multigraph,
    pub nodes_explored: u64,
    pub complete: bool,
}

const FAR: u8 = u8::MAX;

struct Search {
    n: usize,
    s: usize,
    adj: Vec<u64>,
    edges: usize,
    best: usize,
    best_adj: Vec<u64>,
    /// ex(m) for m < n, filled bottom-up.
    smaller: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
}

impl Search {
    fn distances(&self, k: usize) -> Vec<u8> {
        let mut dist = alloc::vec![FAR; k * k];
        for src in 0..k {
            dist[src * k + src] = 0;
            let mut frontier = 1u64 << src;
            let mut seen = frontier;
            let mut d = 0u8;
            while frontier != 0 && (d as usize) < self.s {
                d += 1;
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let x = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[x];
                }
                next &= !seen;
                seen |= next;
                let mut m = next;
                while m != 0 {
                    let y = m.trailing_zeros() as usize;
                    m &= m - 1;
                    dist[src * k + y] = d;
                }
                frontier = next;
            }
        }
        dist
    }

    /// Size of the largest vertex set of `0..k` at pairwise distance >= s-1.
    fn largest_far_set(&self, k: usize, dist: &[u8]) -> usize {
        fn go(i: usize, k: usize, need: u8, dist: &[u8], chosen: &mut Vec<usize>, best: &mut usize) {
            if chosen.len() + (k - i) <= *best {
                return;
            }
            if i == k {
                *best = chosen.len();
                return;
            }
            if chosen.iter().all(|&c| dist[c * k + i] >= need) {
                chosen.push(i);
                go(i + 1, k, need, dist, chosen, best);
                chosen.pop();
            }
            go(i + 1, k, need, dist, chosen, best);
        }
        let mut best = 0;
        go(0, k, (self.s - 1) as u8, dist, &mut Vec::new(), &mut best);
        best
    }

    fn add_vertex(&mut self, v: usize) {
        if self.aborted {
            return;
        }
        if v == self.n {
            if self.edges > self.best {
                self.best = self.edges;
                self.best_adj.clone_from(&self.adj);
            }
            return;
        }
        let dist = self.distances(v);
        let rest = self.n - v;
        if v > 0 {
            let room = self.largest_far_set(v, &dist);
            if self.edges + self.smaller[rest] + rest * room <= self.best {
                return;
            }
        }
        let mut chosen = Vec::new();
        self.choose(v, 0, &dist, &mut chosen);
    }

    fn choose(&mut self, v: usize, i: usize, dist: &[u8], chosen: &mut Vec<usize>) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes >= self.max_nodes {
            self.aborted = true;
            return;
        }
        if i == v {
            for &c in chosen.iter() {
                self.adj[c] |= 1 << v;
                self.adj[v] |= 1 << c;
            }
            self.edges += chosen.len();
            self.add_vertex(v + 1);
            self.edges -= chosen.len();
            for &c in chosen.iter() {
                self.adj[c] &= !(1 << v);
            }
            self.adj[v] = 0;
            return;
        }
        let need = (self.s - 1) as u8;
        if chosen.iter().all(|&c| dist[c * v + i] >= need) {
            chosen.push(i);
            self.choose(v, i + 1, dist, chosen);
            chosen.pop();
        }
        self.choose(v, i + 1, dist, chosen);
    }
}

fn path(n: usize) -> Vec<u64> {
    let mut adj = alloc::vec![0u64; n];
    for v in 1..n {
        adj[v] |= 1 << (v - 1);
        adj[v - 1] |= 1 << v;
    }
    adj
}

fn to_multigraph(adj: &[u64]) -> Multigraph {
    Multigraph::from_fn(adj.len(), |u, v| ((adj[u] >> v) & 1) as u32)
}

/// ex(n, {C3,..,Cs}) with a witness, exploring at most `max_nodes` nodes in
/// total (including the smaller instances used for bounding).
pub fn girth_turan(n: usize, s: usize, max_nodes: u64) -> Result<GirthResult> {
    if s < 3 {
        return Err(invalid!("girth_turan needs s >= 3 (got {s})"));
    }
    if n == 0 || n > 64 {
        return Err(invalid!("girth_turan needs 1 <= n <= 64 (got {n})"));
    }
    let mut smaller = alloc::vec![0usize; n + 1];
    let mut nodes = 0u64;
    let mut complete = true;
    let mut last = None;
    for m in 1..=n {
        let mut search = Search {
            n: m,
            s,
            adj: alloc::vec![0; m],
            edges: 0,
            best: m - 1,
            best_adj: path(m),
            smaller: smaller.clone(),
            nodes: 0,
            max_nodes: max_nodes.saturating_sub(nodes).max(1),
            aborted: false,
        };
        search.add_vertex(0);
        nodes += search.nodes;
        if search.aborted {
            complete = false;
            // keep the bound valid: an unfinished value is not an upper bound
            smaller[m] = m * (m - 1) / 2;
        } else {
            smaller[m] = search.best;
        }
        last = Some(search);
    }
    let search = last.expect("n >= 1");
    Ok(GirthResult {
        edges: search.best,
        witness: to_multigraph(&search.best_adj),
        nodes_explored: nodes,
        complete,
    })
}
