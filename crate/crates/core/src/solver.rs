//! Exact ex_Π(n,s,q) and ex_Σ(n,s,q) by branch and bound.
//!
//! Pairs are assigned in the order (0,1), (0,2), (1,2), (0,3), .. so that
//! each new vertex's pairs complete contiguously. Every node checks the
//! s-sets through the pair just assigned, bounds the objective with the
//! averaging cap e(G) <= q C(n,2) / C(s,2) and integral AM-GM, and rejects
//! prefixes that are not lexicographically maximal under vertex relabelling.
//!
//! This module is single-threaded; [`Searcher::frontier`] and
//! [`SearchHooks`] let a driver split the tree and share the incumbent.

use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bigprod::max_product_with_sum;
use crate::error::{invalid, Result};
use crate::multigraph::Multigraph;
use crate::turan::{build_turan, pi_max, sigma, Objective, TuranSpec};
use crate::{binom, Mult};

/// Objective values during search: a product or a sum.
pub type Score = u128;

/// Nodes between two calls of [`SearchHooks::poll`].
pub const POLL_INTERVAL: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Problem {
    pub n: usize,
    pub s: usize,
    pub q: u64,
    pub objective: Objective,
}

impl Problem {
    pub fn new(n: usize, s: usize, q: u64, objective: Objective) -> Result<Self> {
        if s < 2 || s > n {
            return Err(invalid!("need 2 <= s <= n (got n={n}, s={s})"));
        }
        if n > 64 {
            return Err(invalid!("exact search supports at most 64 vertices (got {n})"));
        }
        Ok(Problem { n, s, q, objective })
    }

    /// The averaging cap ⌊q C(n,2) / C(s,2)⌋ on e(G).
    pub fn sum_cap(&self) -> u64 {
        let pairs = binom(self.n as u64, 2) as u128;
        (pairs * self.q as u128 / binom(self.s as u64, 2) as u128) as u64
    }
}

/// Search limits. Only `max_nodes` is honoured by the single-threaded search
/// in this crate; the `mgx` driver also applies the wall-clock limit and
/// thread count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time_s: f64,
    /// 0 means one thread per core.
    pub threads: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 1_000_000_000, max_time_s: 600.0, threads: 0 }
    }
}

/// Which pruning rules are active. [`SearchOptions::exhaustive`] disables
/// all of them and is meant for validating the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Check s-sets through each new pair, counting unassigned pairs at their
    /// least admissible value.
    pub partial_feasibility: bool,
    /// Averaging cap plus AM-GM bound on the unassigned pairs.
    pub bound: bool,
    /// Lexicographically maximal prefixes only.
    pub symmetry: bool,
    /// Cap each pair at q - (C(s,2) - 1) times the least admissible value.
    pub tight_edge_cap: bool,
    /// Prefixes on at most this many vertices are tested against all
    /// relabellings; larger ones against a fixed random sample.
    pub full_canonical_up_to: usize,
    pub perm_sample: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            partial_feasibility: true,
            bound: true,
            symmetry: true,
            tight_edge_cap: false,
            full_canonical_up_to: 7,
            perm_sample: 5040,
            seed: 0,
        }
    }
}

impl SearchOptions {
    pub fn exhaustive() -> Self {
        SearchOptions { partial_feasibility: false, bound: false, symmetry: false, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: BigUint,
    pub witness: Multigraph,
    pub nodes_explored: u64,
    /// False when a budget stopped the search; `optimum` is then the best found.
    pub complete: bool,
}

/// Callbacks connecting a search to its driver.
pub trait SearchHooks {
    /// Best score known so far (from any worker).
    fn best(&self) -> Score;
    /// Reports a strictly better solution, weights in search order.
    fn improve(&mut self, score: Score, weights: &[Mult]);
    /// Called every [`POLL_INTERVAL`] nodes; returning true aborts.
    fn poll(&mut self, new_nodes: u64) -> bool;
    /// Receives the prefixes reached at the cut depth of [`Searcher::frontier`].
    fn frontier_prefix(&mut self, _prefix: &[Mult]) {}
}

/// Outcome of [`Searcher::run`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunStats {
    pub nodes: u64,
    pub aborted: bool,
}

struct SetCache {
    /// (s-1)-subsets Y of the earlier vertices with e(Y).
    sets: Vec<(Vec<u8>, u64)>,
    /// Indices into `sets` of the subsets containing each vertex.
    by_member: Vec<Vec<u32>>,
}

/// Immutable search description; cheap to share between threads.
pub struct Searcher {
    problem: Problem,
    opts: SearchOptions,
    pairs: Vec<(u8, u8)>,
    cap: u64,
    /// maxprod[m][S]: largest product of m nonnegative integers with sum S,
    /// saturated at `Score::MAX`.
    maxprod: Vec<Vec<Score>>,
    /// Relabellings tried for prefixes on k vertices, as maps new -> old.
    perms: Vec<Vec<Vec<u8>>>,
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    fn go(cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut alloc::vec![false; k], &mut out);
    out
}

fn moved(p: &[u8]) -> usize {
    p.iter().enumerate().filter(|(i, &v)| *i != v as usize).count()
}

impl Searcher {
    pub fn new(problem: Problem, opts: SearchOptions) -> Result<Self> {
        let n = problem.n;
        let mut pairs = Vec::new();
        for v in 1..n {
            for u in 0..v {
                pairs.push((u as u8, v as u8));
            }
        }
        let cap = problem.sum_cap();
        let total = pairs.len() as u64;
        let limit = BigUint::from(1u8) << 126u32;
        let mut maxprod = Vec::with_capacity(pairs.len() + 1);
        if problem.objective == Objective::Product {
            for m in 0..=total {
                let mut row = Vec::with_capacity(cap as usize + 1);
                for sum in 0..=cap {
                    let v = max_product_with_sum(m, sum);
                    if v >= limit {
                        return Err(invalid!(
                            "products for (n,s,q) = ({n},{},{}) exceed the exact search range",
                            problem.s,
                            problem.q
                        ));
                    }
                    row.push(u128::try_from(v).expect("checked above"));
                }
                maxprod.push(row);
            }
        }
        let mut perms = alloc::vec![Vec::new(); n + 1];
        if opts.symmetry {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for (k, slot) in perms.iter_mut().enumerate().skip(2) {
                let mut list = if k <= opts.full_canonical_up_to {
                    permutations(k)
                } else {
                    (0..opts.perm_sample)
                        .map(|_| {
                            let mut p: Vec<u8> = (0..k as u8).collect();
                            p.shuffle(&mut rng);
                            p
                        })
                        .collect()
                };
                list.retain(|p| moved(p) > 0);
                list.sort_by_key(|p| moved(p));
                *slot = list;
            }
        }
        Ok(Searcher { problem, opts, pairs, cap, maxprod, perms })
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn total_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Builds the multigraph from weights listed in search order.
    pub fn to_multigraph(&self, weights: &[Mult]) -> Multigraph {
        let mut g = Multigraph::empty(self.problem.n);
        for (k, &(u, v)) in self.pairs.iter().enumerate() {
            g.set(u as usize, v as usize, weights[k]);
        }
        g
    }

    /// Weights of `g` in search order.
    pub fn weights_of(&self, g: &Multigraph) -> Vec<Mult> {
        self.pairs.iter().map(|&(u, v)| g.get(u as usize, v as usize)).collect()
    }

    pub fn score_of(&self, g: &Multigraph) -> Score {
        match self.problem.objective {
            Objective::Sum => g.total_sum() as Score,
            Objective::Product => u128::try_from(g.total_product()).unwrap_or(Score::MAX),
        }
    }

    /// A feasible starting solution: the best constant multigraph or member
    /// of a T_{r,d}(a,n) family whose s-sets fit under q.
    pub fn initial(&self) -> (Score, Vec<Mult>) {
        let Problem { n, s, q, .. } = self.problem;
        let c2s = binom(s as u64, 2);
        let mut best = Multigraph::constant(n, (q / c2s).min(Mult::MAX as u64) as Mult);
        let mut best_score = self.score_of(&best);
        let amax = (q / c2s + 1).min(64) as u32;
        for r in 1..=n {
            for a in 1..=amax {
                for d in 0..a {
                    let spec = TuranSpec { r, d, a };
                    if sigma(spec, s) > q {
                        continue;
                    }
                    let g = build_turan(spec, &pi_max(spec, n).1).expect("partition has r parts");
                    let score = self.score_of(&g);
                    if score > best_score && g.is_sq_graph(s, q) {
                        best = g;
                        best_score = score;
                    }
                }
            }
        }
        (best_score, self.weights_of(&best))
    }

    /// Upper bound on the objective over all of F(n,s,q).
    pub fn global_bound(&self) -> Score {
        match self.problem.objective {
            Objective::Sum => self.cap as Score,
            Objective::Product => self.maxprod[self.pairs.len()][self.cap as usize],
        }
    }

    /// All prefixes of length `depth` that survive pruning against `best`.
    pub fn frontier(&self, depth: usize, best: Score) -> Vec<Vec<Mult>> {
        let depth = depth.min(self.pairs.len());
        let mut hooks = Collect { best, out: Vec::new() };
        let mut walk = Walk::new(self, &[]);
        walk.stop_at = depth;
        walk.dfs(0, &mut hooks);
        hooks.out
    }

    /// Searches every completion of `prefix` (a frontier element).
    pub fn run(&self, prefix: &[Mult], hooks: &mut dyn SearchHooks) -> RunStats {
        let mut walk = Walk::new(self, prefix);
        walk.dfs(prefix.len(), hooks);
        let left = walk.nodes % POLL_INTERVAL;
        if !walk.aborted && left > 0 {
            hooks.poll(left);
        }
        RunStats { nodes: walk.nodes, aborted: walk.aborted }
    }
}

struct Collect {
    best: Score,
    out: Vec<Vec<Mult>>,
}

impl SearchHooks for Collect {
    fn best(&self) -> Score {
        self.best
    }
    fn improve(&mut self, score: Score, _: &[Mult]) {
        self.best = score;
    }
    fn poll(&mut self, _: u64) -> bool {
        false
    }
    fn frontier_prefix(&mut self, prefix: &[Mult]) {
        self.out.push(prefix.to_vec());
    }
}

struct Walk<'a> {
    sr: &'a Searcher,
    n: usize,
    w: Vec<Mult>,
    mat: Vec<Mult>,
    sum: u64,
    prod: Score,
    caches: Vec<SetCache>,
    nodes: u64,
    aborted: bool,
    stop_at: usize,
}

impl<'a> Walk<'a> {
    fn new(sr: &'a Searcher, prefix: &[Mult]) -> Self {
        let n = sr.problem.n;
        let mut walk = Walk {
            sr,
            n,
            w: alloc::vec![0; sr.pairs.len()],
            mat: alloc::vec![0; n * n],
            sum: 0,
            prod: 1,
            caches: (0..n).map(|_| SetCache { sets: Vec::new(), by_member: alloc::vec![Vec::new(); n] }).collect(),
            nodes: 0,
            aborted: false,
            stop_at: usize::MAX,
        };
        for (k, &m) in prefix.iter().enumerate() {
            walk.assign(k, m);
        }
        if let Some(&(u, v)) = sr.pairs.get(prefix.len()) {
            if u != 0 {
                walk.fill_cache(v as usize);
            }
        }
        walk
    }

    #[inline]
    fn at(&self, u: usize, v: usize) -> Mult {
        self.mat[u * self.n + v]
    }

    fn assign(&mut self, k: usize, m: Mult) {
        let (u, v) = self.sr.pairs[k];
        let (u, v) = (u as usize, v as usize);
        self.w[k] = m;
        self.mat[u * self.n + v] = m;
        self.mat[v * self.n + u] = m;
        self.sum += m as u64;
        self.prod = self.prod.saturating_mul(m as Score);
    }

    fn unassign(&mut self, k: usize, saved_prod: Score) {
        let (u, v) = self.sr.pairs[k];
        let m = self.w[k];
        self.mat[u as usize * self.n + v as usize] = 0;
        self.mat[v as usize * self.n + u as usize] = 0;
        self.w[k] = 0;
        self.sum -= m as u64;
        self.prod = saved_prod;
    }

    /// Lists the (s-1)-subsets of `0..v` with their edge sums.
    fn fill_cache(&mut self, v: usize) {
        let k = self.sr.problem.s - 1;
        let mut cache = core::mem::replace(
            &mut self.caches[v],
            SetCache { sets: Vec::new(), by_member: Vec::new() },
        );
        cache.sets.clear();
        cache.by_member.resize(self.n, Vec::new());
        for b in cache.by_member.iter_mut() {
            b.clear();
        }
        let mut it = crate::subsets::subsets(v, k);
        while it.advance() {
            let y = it.current();
            let mut e = 0u64;
            for i in 0..y.len() {
                for j in i + 1..y.len() {
                    e += self.at(y[i], y[j]) as u64;
                }
            }
            let idx = cache.sets.len() as u32;
            for &x in y {
                cache.by_member[x].push(idx);
            }
            cache.sets.push((y.iter().map(|&x| x as u8).collect(), e));
        }
        self.caches[v] = cache;
    }

    /// Largest value pair (u,v) can take given the s-sets through it, with
    /// unassigned pairs (x,v), x > u, counted at `lo`.
    fn feasible_max(&self, u: usize, v: usize, lo: Mult) -> Option<u64> {
        let q = self.sr.problem.q;
        let cache = &self.caches[v];
        let mut best = u64::MAX;
        for &idx in &cache.by_member[u] {
            let (ref y, e) = cache.sets[idx as usize];
            let mut t = e;
            for &x in y {
                let x = x as usize;
                if x < u {
                    t += self.at(x, v) as u64;
                } else if x > u {
                    t += lo as u64;
                }
            }
            if t > q {
                return None;
            }
            best = best.min(q - t);
        }
        Some(best)
    }

    fn is_canonical(&self, k: usize) -> bool {
        'perm: for p in &self.sr.perms[k] {
            for j in 1..k {
                for i in 0..j {
                    let a = self.at(p[i] as usize, p[j] as usize);
                    let b = self.at(i, j);
                    if a != b {
                        if a > b {
                            return false;
                        }
                        continue 'perm;
                    }
                }
            }
        }
        true
    }

    fn leaf_score(&self) -> Option<Score> {
        let sr = self.sr;
        if !sr.opts.partial_feasibility {
            let g = sr.to_multigraph(&self.w);
            if !g.is_sq_graph(sr.problem.s, sr.problem.q) {
                return None;
            }
        }
        Some(match sr.problem.objective {
            Objective::Sum => self.sum as Score,
            Objective::Product => self.prod,
        })
    }

    fn dfs(&mut self, k: usize, hooks: &mut dyn SearchHooks) {
        let sr = self.sr;
        let total = sr.pairs.len();
        if k == self.stop_at {
            hooks.frontier_prefix(&self.w[..k]);
            return;
        }
        if k == total {
            if let Some(score) = self.leaf_score() {
                if score > hooks.best() {
                    hooks.improve(score, &self.w);
                }
            }
            return;
        }
        let (u, v) = sr.pairs[k];
        let (u, v) = (u as usize, v as usize);
        if u == 0 && sr.opts.partial_feasibility {
            self.fill_cache(v);
        }
        let product = sr.problem.objective == Objective::Product;
        let lo: Mult = if product && sr.opts.bound && hooks.best() >= 1 { 1 } else { 0 };
        let mut hi = sr.problem.q.min(Mult::MAX as u64);
        if sr.opts.partial_feasibility {
            match self.feasible_max(u, v, lo) {
                Some(m) => hi = hi.min(m),
                None => return,
            }
        }
        if sr.opts.tight_edge_cap && self.n >= sr.problem.s {
            let others = binom(sr.problem.s as u64, 2) - 1;
            hi = hi.min(sr.problem.q.saturating_sub(others * lo as u64));
        }
        if sr.opts.bound {
            hi = hi.min(sr.cap.saturating_sub(self.sum));
        }
        if (hi as Mult) < lo {
            return;
        }
        let rem = total - k - 1;
        let complete_vertex = u + 1 == v;
        let saved = self.prod;
        let mut m = hi as Mult;
        loop {
            self.nodes += 1;
            if self.nodes.is_multiple_of(POLL_INTERVAL) && hooks.poll(POLL_INTERVAL) {
                self.aborted = true;
                return;
            }
            let pruned = sr.opts.bound && {
                let slack = sr.cap - self.sum - m as u64;
                let bound = match sr.problem.objective {
                    Objective::Product => {
                        saved.saturating_mul(m as Score).saturating_mul(sr.maxprod[rem][slack as usize])
                    }
                    Objective::Sum => (self.sum + m as u64 + slack.min(rem as u64 * sr.problem.q)) as Score,
                };
                bound <= hooks.best()
            };
            if !pruned {
                self.assign(k, m);
                let ok = !(complete_vertex && sr.opts.symmetry) || self.is_canonical(v + 1);
                if ok {
                    self.dfs(k + 1, hooks);
                }
                self.unassign(k, saved);
                if self.aborted {
                    return;
                }
            }
            if m == lo {
                break;
            }
            m -= 1;
        }
    }
}

/// Single-threaded search honouring `max_nodes`.
pub fn solve(problem: Problem, opts: SearchOptions, max_nodes: u64) -> Result<SearchResult> {
    let sr = Searcher::new(problem, opts)?;
    let (score, weights) = sr.initial();
    let mut hooks = Local { best: score, weights, nodes: 0, max_nodes };
    let mut complete = true;
    if score < sr.global_bound() || !sr.opts.bound {
        let stats = sr.run(&[], &mut hooks);
        complete = !stats.aborted;
        hooks.nodes = stats.nodes;
    }
    Ok(SearchResult {
        optimum: BigUint::from(hooks.best),
        witness: sr.to_multigraph(&hooks.weights),
        nodes_explored: hooks.nodes,
        complete,
    })
}

struct Local {
    best: Score,
    weights: Vec<Mult>,
    nodes: u64,
    max_nodes: u64,
}

impl SearchHooks for Local {
    fn best(&self) -> Score {
        self.best
    }
    fn improve(&mut self, score: Score, weights: &[Mult]) {
        self.best = score;
        self.weights.clear();
        self.weights.extend_from_slice(weights);
    }
    fn poll(&mut self, new_nodes: u64) -> bool {
        self.nodes += new_nodes;
        self.nodes >= self.max_nodes
    }
}

/// ex_Π(n,s,q), single-threaded; only `budget.max_nodes` applies here.
pub fn ex_pi_exact(n: usize, s: usize, q: u64, budget: &SearchBudget) -> Result<SearchResult> {
    solve(Problem::new(n, s, q, Objective::Product)?, SearchOptions::default(), budget.max_nodes)
}

/// ex_Σ(n,s,q), single-threaded; only `budget.max_nodes` applies here.
pub fn ex_sigma_exact(n: usize, s: usize, q: u64, budget: &SearchBudget) -> Result<SearchResult> {
    solve(Problem::new(n, s, q, Objective::Sum)?, SearchOptions::default(), budget.max_nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    /// Maximum over every assignment of 0..=q to the pairs, by plain loops.
    fn brute(n: usize, s: usize, q: u64, objective: Objective) -> u64 {
        let pairs = n * (n - 1) / 2;
        let mut w = alloc::vec![0 as Mult; pairs];
        let mut best = 0;
        loop {
            let g = Multigraph::from_fn(n, {
                let mut it = w.iter();
                move |_, _| *it.next().unwrap()
            });
            if g.is_sq_graph(s, q) {
                let v = match objective {
                    Objective::Sum => g.total_sum(),
                    Objective::Product => u64::try_from(g.total_product()).unwrap(),
                };
                best = best.max(v);
            }
            let mut i = 0;
            while i < pairs && w[i] as u64 == q {
                w[i] = 0;
                i += 1;
            }
            if i == pairs {
                return best;
            }
            w[i] += 1;
        }
    }

    #[test]
    fn base_cases() {
        for a in 2..=3u64 {
            let q = 6 * a + 3;
            let r4 = ex_pi_exact(4, 4, q, &budget()).unwrap();
            assert!(r4.complete);
            assert_eq!(r4.optimum, big(a.pow(3) * (a + 1).pow(3)));
            let r5 = ex_pi_exact(5, 4, q, &budget()).unwrap();
            assert_eq!(r5.optimum, big(a.pow(5) * (a + 1).pow(5)));
            assert!(r5.witness.is_sq_graph(4, q));
            assert_eq!(r5.witness.total_product(), r5.optimum);
        }
    }

    #[test]
    fn five_vertex_witness_is_a_boosted_five_cycle() {
        let r = ex_pi_exact(5, 4, 15, &budget()).unwrap();
        let g = &r.witness;
        let heavy: Vec<(usize, usize)> = crate::subsets::subsets(5, 2)
            .filter(|p| g.get(p[0], p[1]) == 3)
            .map(|p| (p[0], p[1]))
            .collect();
        assert_eq!(heavy.len(), 5);
        for v in 0..5 {
            assert_eq!(heavy.iter().filter(|e| e.0 == v || e.1 == v).count(), 2);
        }
        assert_eq!(g.weights().iter().filter(|&&m| m == 2).count(), 5);
    }

    #[test]
    fn sum_values() {
        assert_eq!(ex_sigma_exact(4, 4, 15, &budget()).unwrap().optimum, big(15));
        assert_eq!(ex_sigma_exact(5, 4, 15, &budget()).unwrap().optimum, big(25));
        for s in 2..6 {
            for q in [0u64, 3, 11] {
                assert_eq!(ex_sigma_exact(s, s, q, &budget()).unwrap().optimum, big(q));
            }
        }
    }

    #[test]
    fn pruning_matches_plain_enumeration() {
        for n in 2..=4 {
            for s in 2..=n {
                for q in 0..=7u64 {
                    for objective in [Objective::Product, Objective::Sum] {
                        let p = Problem::new(n, s, q, objective).unwrap();
                        let fast = solve(p, SearchOptions::default(), u64::MAX).unwrap();
                        let plain = solve(p, SearchOptions::exhaustive(), u64::MAX).unwrap();
                        assert_eq!(fast.optimum, plain.optimum, "{p:?}");
                        if n <= 3 || q <= 4 {
                            assert_eq!(fast.optimum, big(brute(n, s, q, objective)), "{p:?}");
                        }
                        assert!(fast.witness.is_sq_graph(s, q));
                    }
                }
            }
        }
    }

    #[test]
    fn tight_cap_and_sampled_symmetry_agree() {
        for (n, s, q) in [(5, 3, 8), (5, 4, 12), (6, 3, 7)] {
            let p = Problem::new(n, s, q, Objective::Product).unwrap();
            let base = solve(p, SearchOptions::default(), u64::MAX).unwrap().optimum;
            let tight = SearchOptions { tight_edge_cap: true, ..Default::default() };
            assert_eq!(solve(p, tight, u64::MAX).unwrap().optimum, base);
            let sampled = SearchOptions { full_canonical_up_to: 3, perm_sample: 20, ..Default::default() };
            assert_eq!(solve(p, sampled, u64::MAX).unwrap().optimum, base);
        }
    }

    #[test]
    fn monotone_in_q() {
        for n in 3..=5 {
            let mut last = big(0);
            for q in 0..=14 {
                let v = ex_pi_exact(n, 3, q, &budget()).unwrap().optimum;
                assert!(v >= last);
                last = v;
            }
        }
    }

    #[test]
    fn node_budget_marks_incomplete() {
        let r = solve(Problem::new(6, 4, 15, Objective::Product).unwrap(), SearchOptions::default(), 1).unwrap();
        assert!(!r.complete);
        assert!(r.witness.is_sq_graph(4, 15));
        assert_eq!(r.witness.total_product(), r.optimum);
    }

    #[test]
    fn frontier_covers_the_tree() {
        let p = Problem::new(5, 4, 15, Objective::Product).unwrap();
        let sr = Searcher::new(p, SearchOptions::default()).unwrap();
        let (score, weights) = sr.initial();
        let mut best = Local { best: score, weights, nodes: 0, max_nodes: u64::MAX };
        for prefix in sr.frontier(4, score) {
            sr.run(&prefix, &mut best);
        }
        assert_eq!(best.best, 7776);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ex_pi_exact(3, 4, 10, &budget()).is_err());
        assert!(ex_pi_exact(3, 1, 10, &budget()).is_err());
    }
}
