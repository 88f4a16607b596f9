//! Multi-threaded branch and bound over [`Searcher`] subtrees, with node and
//! wall-clock budgets, plus the conjecture comparison built on it.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use mgx_core::solver::{Problem, Score, SearchBudget, SearchHooks, SearchOptions, SearchResult, Searcher};
use mgx_core::turan::{pi_max, sigma, Objective, TuranSpec};
use mgx_core::{BigUint, Error, Mult};
use rayon::prelude::*;

/// Frontier prefixes requested per worker thread.
const PREFIXES_PER_THREAD: usize = 32;

pub fn resolve_threads(threads: usize) -> usize {
    if threads > 0 {
        threads
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

struct Shared {
    incumbent: Mutex<(Score, Vec<Mult>)>,
    nodes: AtomicU64,
    abort: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

struct Worker<'a> {
    shared: &'a Shared,
    best: Score,
}

impl Worker<'_> {
    fn refresh(&mut self) {
        self.best = self.best.max(self.shared.incumbent.lock().expect("incumbent lock").0);
    }
}

impl SearchHooks for Worker<'_> {
    fn best(&self) -> Score {
        self.best
    }

    fn improve(&mut self, score: Score, weights: &[Mult]) {
        let mut inc = self.shared.incumbent.lock().expect("incumbent lock");
        if score > inc.0 || (score == inc.0 && weights > inc.1.as_slice()) {
            *inc = (score, weights.to_vec());
        }
        self.best = inc.0;
    }

    fn poll(&mut self, new_nodes: u64) -> bool {
        let total = self.shared.nodes.fetch_add(new_nodes, Ordering::Relaxed) + new_nodes;
        let late = self.shared.deadline.is_some_and(|d| Instant::now() >= d);
        if total >= self.shared.max_nodes || late {
            self.shared.abort.store(true, Ordering::Relaxed);
        }
        self.refresh();
        self.shared.abort.load(Ordering::Relaxed)
    }
}

/// Solves `problem` on `budget.threads` threads (0 = all cores). The optimum
/// of a complete search does not depend on the thread count.
pub fn solve_parallel(problem: Problem, opts: SearchOptions, budget: &SearchBudget) -> Result<SearchResult, Error> {
    let sr = Searcher::new(problem, opts)?;
    let threads = resolve_threads(budget.threads);
    let (score, weights) = sr.initial();
    let deadline = (budget.max_time_s.is_finite() && budget.max_time_s > 0.0)
        .then(|| Instant::now() + Duration::from_secs_f64(budget.max_time_s));
    let shared = Shared {
        incumbent: Mutex::new((score, weights)),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        max_nodes: budget.max_nodes,
        deadline,
    };
    if score < sr.global_bound() {
        let mut depth = 1;
        let mut frontier = sr.frontier(depth, score);
        while frontier.len() < PREFIXES_PER_THREAD * threads && depth < sr.total_pairs() && !frontier.is_empty() {
            depth += 1;
            frontier = sr.frontier(depth, score);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start {threads} threads: {e}")))?;
        pool.install(|| {
            frontier.par_iter().for_each(|prefix| {
                if shared.abort.load(Ordering::Relaxed) {
                    return;
                }
                let mut w = Worker { shared: &shared, best: 0 };
                w.refresh();
                sr.run(prefix, &mut w);
            })
        });
    }
    let (best, weights) = shared.incumbent.into_inner().expect("incumbent lock");
    Ok(SearchResult {
        optimum: BigUint::from(best),
        witness: sr.to_multigraph(&weights),
        nodes_explored: shared.nodes.into_inner(),
        complete: !shared.abort.into_inner(),
    })
}

pub fn ex_pi(n: usize, s: usize, q: u64, budget: &SearchBudget) -> Result<SearchResult, Error> {
    solve_parallel(Problem::new(n, s, q, Objective::Product)?, SearchOptions::default(), budget)
}

pub fn ex_sigma(n: usize, s: usize, q: u64, budget: &SearchBudget) -> Result<SearchResult, Error> {
    solve_parallel(Problem::new(n, s, q, Objective::Sum)?, SearchOptions::default(), budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureStatus {
    Equal,
    ConstructionBeaten,
    SearchIncomplete,
}

impl ConjectureStatus {
    pub fn tag(self) -> &'static str {
        match self {
            ConjectureStatus::Equal => "EQUAL",
            ConjectureStatus::ConstructionBeaten => "CONSTRUCTION-BEATEN",
            ConjectureStatus::SearchIncomplete => "SEARCH-INCOMPLETE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub spec: TuranSpec,
    pub s: usize,
    pub n: usize,
    /// Σ_{r,d}(a,s), the forbidden-sum threshold.
    pub q: u64,
    pub construction: BigUint,
    pub search: SearchResult,
    pub status: ConjectureStatus,
}

/// Compares ex_Π(n, s, Σ_{r,d}(a,s)) with Π_{r,d}(a,n). A construction can be
/// reported beaten by an incomplete search, never confirmed by one.
pub fn conjecture_check(spec: TuranSpec, s: usize, n: usize, budget: &SearchBudget) -> Result<ConjectureReport, Error> {
    let need = (spec.r - 1) * (spec.d as usize + 1) + 2;
    if s < need {
        return Err(Error::InvalidParameter(format!("need s >= (r-1)(d+1)+2 = {need} (got s={s})")));
    }
    let q = sigma(spec, s);
    let construction = pi_max(spec, n).0;
    let search = ex_pi(n, s, q, budget)?;
    let status = if search.optimum > construction {
        ConjectureStatus::ConstructionBeaten
    } else if search.complete {
        ConjectureStatus::Equal
    } else {
        ConjectureStatus::SearchIncomplete
    };
    Ok(ConjectureReport { spec, s, n, q, construction, search, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mgx_core::solver::solve;

    fn budget(threads: usize) -> SearchBudget {
        SearchBudget { threads, ..SearchBudget::default() }
    }

    #[test]
    fn matches_single_threaded_search() {
        for &(n, s, q) in &[(4, 3, 7), (5, 4, 15), (5, 3, 4), (6, 4, 8), (5, 5, 12)] {
            for objective in [Objective::Product, Objective::Sum] {
                let p = Problem::new(n, s, q, objective).unwrap();
                let one = solve(p, SearchOptions::default(), u64::MAX).unwrap();
                for threads in [1, 3] {
                    let par = solve_parallel(p, SearchOptions::default(), &budget(threads)).unwrap();
                    assert!(par.complete);
                    assert_eq!(par.optimum, one.optimum, "{n} {s} {q} {objective:?}");
                    assert!(par.witness.is_sq_graph(s, q));
                    let value = match objective {
                        Objective::Product => par.witness.total_product(),
                        Objective::Sum => BigUint::from(par.witness.total_sum()),
                    };
                    assert_eq!(value, par.optimum);
                }
            }
        }
    }

    #[test]
    fn node_budget_marks_incomplete() {
        let b = SearchBudget { max_nodes: 10, ..budget(2) };
        let r = ex_pi(6, 4, 15, &b).unwrap();
        assert!(!r.complete);
        assert!(r.witness.is_sq_graph(4, 15));
        assert_eq!(r.witness.total_product(), r.optimum);
    }

    #[test]
    fn conjecture_statuses() {
        let spec = TuranSpec::new(2, 1, 2).unwrap();
        assert_eq!(conjecture_check(spec, 4, 4, &budget(2)).unwrap().status, ConjectureStatus::Equal);
        let five = conjecture_check(spec, 4, 5, &budget(2)).unwrap();
        assert_eq!(five.status, ConjectureStatus::ConstructionBeaten);
        assert_eq!(five.search.optimum, BigUint::from(7776u32));
        for n in 3..=5 {
            let r = conjecture_check(TuranSpec::new(1, 0, 2).unwrap(), 3, n, &budget(1)).unwrap();
            assert_eq!(r.status, ConjectureStatus::Equal);
        }
        let r = conjecture_check(TuranSpec::new(2, 0, 2).unwrap(), 3, 5, &budget(1)).unwrap();
        assert_eq!(r.status, ConjectureStatus::Equal);
        assert!(conjecture_check(spec, 3, 5, &budget(1)).is_err());
    }
}
