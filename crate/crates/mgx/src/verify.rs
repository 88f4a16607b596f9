//! The verification harness: one check per acceptance criterion, each
//! comparing library output with an independent oracle or a closed form.

use std::time::{Duration, Instant};

use mgx_core::girth::girth_turan;
use mgx_core::iterated::{iterated_entropy, AdmissiblePair};
use mgx_core::random::{random_class_structure, random_member, random_member_of};
use mgx_core::reductions::{
    acyclic_transform, auxiliary_graph, clique_classes, cycle_reduce, heavy_edge_reduce, heavy_kset_reduce,
    heavy_triangle_reduce, in_light_classes, kset_threshold, step_down_reduce, symmetrize, t21_parts, Heavy,
    KsetThreshold, LowDegreeWitness, StepDown,
};
use mgx_core::solver::SearchBudget;
use mgx_core::sparse::{h6, sparse_value, sparse_witness, SparseValue};
use mgx_core::turan::{
    entropy_density, extremal_v0_set, pi_max_factored, pi_ratio_lower_bound, sigma, sigma_increment, x_star,
    Objective, TuranSpec,
};
use mgx_core::{binom, BigUint, Multigraph};
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::driver::{ex_pi, resolve_threads};
use crate::oracle;

/// Tolerance for real-valued identities, in log space.
const LOG_TOL: f64 = 1e-10;
/// Wall-clock limit on each required exact search.
const SEARCH_LIMIT_S: f64 = 60.0;
/// Node budget handed to girth searches.
const GIRTH_NODES: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED-budget")]
    SkippedBudget,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedBudget => "SKIPPED-budget",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub status: Status,
    pub observed: String,
    pub expected: String,
    pub runtime_s: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    BaseCases,
    Turan,
    Sparse,
    Entropy,
    Iterated,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::BaseCases => "base-cases",
            Suite::Turan => "turan",
            Suite::Sparse => "sparse",
            Suite::Entropy => "entropy",
            Suite::Iterated => "iterated",
        }
    }

    pub fn ids(self) -> &'static [&'static str] {
        match self {
            Suite::All => &[
                "AC01", "AC01-stretch", "AC02", "AC03", "AC04", "AC05", "AC06", "AC07", "AC08", "AC09", "AC10", "AC11",
                "AC12",
            ],
            Suite::BaseCases => &["AC01", "AC01-stretch", "AC10", "AC12"],
            Suite::Turan => &["AC02", "AC03", "AC06", "AC07", "AC08"],
            Suite::Sparse => &["AC09", "AC11"],
            Suite::Entropy => &["AC04", "AC05"],
            Suite::Iterated => &["AC05"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// 0 means one thread per core.
    pub threads: usize,
    pub seed: u64,
    /// Wall-clock budget of the stretch search.
    pub time_s: f64,
    /// Random instances per reduction lemma.
    pub reduction_instances: usize,
    /// Random instances for symmetrization and the acyclic transform.
    pub transform_instances: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { threads: 0, seed: 0, time_s: 600.0, reduction_instances: 10_000, transform_instances: 1_000 }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerificationReport {
    VerificationReport { suite: suite.name().to_string(), checks: suite.ids().iter().map(|id| run_check(id, opts)).collect() }
}

/// Observed and expected values, and whether they agree.
struct Outcome {
    status: Status,
    observed: String,
    expected: String,
}

fn outcome(ok: bool, observed: impl Into<String>, expected: impl Into<String>) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, observed: observed.into(), expected: expected.into() }
}

/// Runs one check by id; unknown ids fail.
pub fn run_check(id: &str, opts: &VerifyOptions) -> Check {
    let (id, anchor, f): (&'static str, &'static str, fn(&VerifyOptions) -> Outcome) = match id {
        "AC01" => ("AC01", "small base case (i), (ii)", ac01),
        "AC01-stretch" => ("AC01-stretch", "small base case (iii)", ac01_stretch),
        "AC02" => ("AC02", "growth and partition sizes", ac02),
        "AC03" => ("AC03", "why (r-1)(d+1)+2", ac03),
        "AC04" => ("AC04", "x_star property; a-monotonicity of x_star", ac04),
        "AC05" => ("AC05", "gamma; entropy densities, iterated case; ordering of entropy densities", ac05),
        "AC06" => ("AC06", "size of partition in T^P_{2,1}; ratio Pi_{2,1}(a,n+1)/Pi_{2,1}(a,n)", ac06),
        "AC07" => ("AC07", "heavy triangles, edges, 4/5/6-sets; step down; H not acyclic", ac07),
        "AC08" => ("AC08", "clique structure; acyclic H is good; 8 no good", ac08),
        "AC09" => ("AC09", "sparse case", ac09),
        "AC10" => ("AC10", "ex_Pi(n,s,q)^(1/C(n,2)) nonincreasing in n", ac10),
        "AC11" => ("AC11", "H_6(n) construction", ac11),
        "AC12" => ("AC12", "determinism across thread counts", ac12),
        _ => {
            return Check {
                id: "unknown",
                anchor: "",
                status: Status::Fail,
                observed: format!("no check named {id}"),
                expected: String::new(),
                runtime_s: 0.0,
            }
        }
    };
    let start = Instant::now();
    let o = f(opts);
    Check { id, anchor, status: o.status, observed: o.observed, expected: o.expected, runtime_s: start.elapsed().as_secs_f64() }
}

fn spec(r: usize, d: u32, a: u32) -> TuranSpec {
    TuranSpec::new(r, d, a).expect("grid parameters are valid")
}

fn search_budget(threads: usize, time_s: f64) -> SearchBudget {
    SearchBudget { threads, max_time_s: time_s, ..SearchBudget::default() }
}

fn big_pow(b: u64, e: u64) -> BigUint {
    Pow::pow(BigUint::from(b), e)
}

/// (n, q, expected) for the base cases at a = 2, 3.
fn base_cases() -> Vec<(usize, u64, BigUint)> {
    let mut out = Vec::new();
    for a in [2u64, 3] {
        out.push((4, 6 * a + 3, big_pow(a, 3) * big_pow(a + 1, 3)));
        out.push((5, 6 * a + 3, big_pow(a, 5) * big_pow(a + 1, 5)));
    }
    out
}

fn ac01(opts: &VerifyOptions) -> Outcome {
    let (mut obs, mut exp, mut ok) = (Vec::new(), Vec::new(), true);
    for (n, q, want) in base_cases() {
        let start = Instant::now();
        match ex_pi(n, 4, q, &search_budget(opts.threads, SEARCH_LIMIT_S)) {
            Ok(r) => {
                let fast = start.elapsed() < Duration::from_secs_f64(SEARCH_LIMIT_S);
                ok &= r.complete && fast && r.optimum == want && r.witness.total_product() == want;
                obs.push(format!("ex({n},4,{q})={}{}", r.optimum, if r.complete { "" } else { " (incomplete)" }));
            }
            Err(e) => {
                ok = false;
                obs.push(format!("ex({n},4,{q}): {e}"));
            }
        }
        exp.push(format!("ex({n},4,{q})={want}"));
    }
    outcome(ok, obs.join(" "), exp.join(" "))
}

fn ac01_stretch(opts: &VerifyOptions) -> Outcome {
    let want = BigUint::from(419_904u32);
    let expected = format!("ex(6,4,15)={want}");
    match ex_pi(6, 4, 15, &search_budget(opts.threads, opts.time_s.min(600.0))) {
        Ok(r) if !r.complete => Outcome {
            status: Status::SkippedBudget,
            observed: format!("search stopped after {} nodes, best {}", r.nodes_explored, r.optimum),
            expected,
        },
        Ok(r) => outcome(r.optimum == want, format!("ex(6,4,15)={}", r.optimum), expected),
        Err(e) => outcome(false, e.to_string(), expected),
    }
}

fn ac02(_: &VerifyOptions) -> Outcome {
    let mut brute_cases = 0;
    let mut steps = 0;
    let mut bad = Vec::new();
    for r in 1..=4 {
        for a in 1..=4 {
            for d in 0..a {
                let sp = spec(r, d, a);
                for n in 0..=10 {
                    brute_cases += 1;
                    let (fast, slow) = (sigma(sp, n), oracle::sigma_brute(sp, n));
                    if fast != slow {
                        bad.push(format!("Σ_{r},{d}({a},{n}) scan {fast} brute {slow}"));
                    }
                }
                let m = r * d as usize + r - d as usize;
                let mut acc = sigma(sp, m);
                for n in m..200 {
                    steps += 1;
                    acc += sigma_increment(sp, n).expect("n >= rd+r-d");
                    if acc != sigma(sp, n + 1) {
                        bad.push(format!("Σ_{r},{d}({a},{}) telescoped {acc} scan {}", n + 1, sigma(sp, n + 1)));
                        acc = sigma(sp, n + 1);
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{brute_cases} brute-force and {steps} increment comparisons agree")
        } else {
            bad.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
        "scan = brute force for r<=4, d<a<=4, n<=10; telescoped increments = scan to n=200",
    )
}

fn ac03(_: &VerifyOptions) -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for r in 2..=4usize {
        for d in 1..=3u32 {
            for a in d + 1..=6 {
                let threshold = (r - 1) * (d as usize + 1) + 2;
                for s in 1..=20 {
                    cases += 1;
                    let (lo, hi) = (sigma(spec(r, d, a), s), sigma(spec(r, d - 1, a), s));
                    let ok = if s >= threshold { hi > lo } else { hi == lo };
                    if !ok {
                        bad.push(format!("r={r} d={d} a={a} s={s}: Σ_d-1={hi} Σ_d={lo}"));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{cases} cases agree") } else { bad.join("; ") },
        "Σ_{r,d-1}(a,s) > Σ_{r,d}(a,s) iff s >= (r-1)(d+1)+2, equality below",
    )
}

fn ac04(_: &VerifyOptions) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for r in 2..=6usize {
        let rf = r as f64;
        for a in 1..=50u32 {
            for d in 0..a {
                let x = x_star(r, a, d).expect("valid grid point");
                let (af, df) = (a as f64, d as f64);
                let lhs = x * (af - df).ln() + (1.0 - x) * (af + 1.0).ln();
                let rhs = (1.0 - x) / (rf - 1.0) * af.ln() + (rf - 2.0 + x) / (rf - 1.0) * (af + 1.0).ln();
                worst = worst.max((lhs - rhs).abs());
                let limit = 1.0 / (d as f64 * (rf - 1.0) + rf);
                let floor = x_star(r, d + 1, d).expect("valid");
                if x < floor - 1e-12 {
                    bad.push(format!("r={r} a={a} d={d}: below x(d+1,d)"));
                }
                if (d == 0 && (x - limit).abs() > 1e-12) || (d > 0 && x >= limit) {
                    bad.push(format!("r={r} a={a} d={d}: x={x} limit={limit}"));
                }
                if a < 50 && x_star(r, a + 1, d).expect("valid") < x - 1e-12 {
                    bad.push(format!("r={r} a={a} d={d}: decreases in a"));
                }
                if d + 1 < a && x_star(r, a, d + 1).expect("valid") > x + 1e-12 {
                    bad.push(format!("r={r} a={a} d={d}: increases in d"));
                }
            }
            if a <= 6 {
                for d in 0..a {
                    let far = x_star(r, 1_000_000, d).expect("valid");
                    let limit = 1.0 / (d as f64 * (rf - 1.0) + rf);
                    if (far - limit).abs() > 1e-4 {
                        bad.push(format!("r={r} d={d}: x(1e6,d)={far} vs limit {limit}"));
                    }
                }
            }
        }
    }
    if worst > LOG_TOL {
        bad.push(format!("residual {worst:e}"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("max log residual {worst:.2e}; monotonicity and limits hold") } else { bad.join("; ") },
        "residual <= 1e-10; x(d+1,d) <= x(a,d) < 1/(d(r-1)+r), increasing in a, decreasing in d",
    )
}

/// The pair whose iterated construction is T_{r,d}(a,n).
fn turan_as_pair(r: usize, d: u32, a: u32) -> AdmissiblePair {
    let pair = match (r, d) {
        (1, _) => AdmissiblePair::new(vec![1], vec![a - d]),
        (_, 0) => AdmissiblePair::new(vec![r], vec![a]),
        _ => AdmissiblePair::new(vec![r - 1, 1], vec![a, a - d]),
    };
    pair.expect("valid pair")
}

fn ac05(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    let (l2, l3) = (2f64.ln(), 3f64.ln());
    let beta = l3 / (2.0 * l3 - l2);
    let gamma = beta * beta / 2.0 + beta * (1.0 - beta) * l3 / l2;
    let observed_gamma = entropy_density(spec(2, 1, 2)) / (2.0 * l2);
    if (observed_gamma - gamma).abs() > LOG_TOL {
        bad.push(format!("π_2,1(2)/(2 ln 2) = {observed_gamma}, γ = {gamma}"));
    }
    let mut worst: f64 = 0.0;
    let mut order_cases = 0;
    for a in 1..=6u32 {
        let mut grid = Vec::new();
        for r in 1..=4usize {
            for d in 0..a {
                let pi = entropy_density(spec(r, d, a));
                let it = iterated_entropy(&turan_as_pair(r, d, a));
                worst = worst.max((pi - it).abs());
                grid.push((r, d, pi));
            }
        }
        for &(r1, d1, p1) in &grid {
            for &(r2, d2, p2) in &grid {
                order_cases += 1;
                let predicted = r1 > r2 || (r1 == r2 && d1 <= d2);
                let actual = p1 >= p2 - LOG_TOL;
                if predicted != actual {
                    bad.push(format!("a={a}: π_{r1},{d1}={p1} vs π_{r2},{d2}={p2}"));
                }
            }
        }
    }
    if worst > LOG_TOL {
        bad.push(format!("iterated vs density residual {worst:e}"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("γ = {observed_gamma:.12}; iterated residual {worst:.2e}; {order_cases} orderings agree")
        } else {
            bad.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
        format!("γ = {gamma:.12}; residual <= 1e-10; π_r1,d1 >= π_r2,d2 iff r1 > r2 or (r1 = r2, d1 <= d2)"),
    )
}

/// P of T_{2,1}(a,n) with |V0| = v0, from scratch.
fn t21_product(a: u64, n: usize, v0: usize) -> BigUint {
    let v1 = n - v0;
    big_pow(a - 1, binom(v0 as u64, 2)) * big_pow(a, binom(v1 as u64, 2)) * big_pow(a + 1, (v0 * v1) as u64)
}

fn ac06(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for a in 2..=6u32 {
        let sp = spec(2, 1, a);
        let x = x_star(2, a, 1).expect("valid");
        for n in 2..=200usize {
            cases += 1;
            let v0s = extremal_v0_set(sp, n, Objective::Product);
            let lo = (n - 1) as f64 * x;
            for &v0 in &v0s {
                if (v0 as f64) < lo - 1e-9 || (v0 as f64) > lo + 1.0 + 1e-9 {
                    bad.push(format!("a={a} n={n}: v0={v0} outside [{lo:.4}, {:.4}]", lo + 1.0));
                }
            }
            if n <= 60 {
                let all: Vec<BigUint> = (0..=n).map(|v| t21_product(a as u64, n, v)).collect();
                let top = all.iter().max().expect("n >= 2");
                let brute: Vec<usize> = (0..=n).filter(|&v| &all[v] == top).collect();
                if brute != v0s {
                    bad.push(format!("a={a} n={n}: optimal v0 {v0s:?}, brute force {brute:?}"));
                }
            }
            if n < 200 {
                let gain = pi_max_factored(sp, n + 1).0.ln() - pi_max_factored(sp, n).0.ln();
                let bound = pi_ratio_lower_bound(a, n).expect("a >= 2");
                if gain < bound - 1e-9 {
                    bad.push(format!("a={a} n={n}: log ratio {gain} < {bound}"));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{cases} (a,n) pairs in range") } else { bad.into_iter().take(5).collect::<Vec<_>>().join("; ") },
        "v0 in [(n-1)x, (n-1)x+1] and log Π(n+1) - log Π(n) >= n((1-x) log a + x log(a+1))",
    )
}

fn instance_rng(seed: u64, stream: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(i as u128 * 1024);
    rng
}

/// Checks a witness against an independent recomputation: `vertex` lies in
/// `source`, has the least product-degree there, and p^root <= rhs.
fn check_witness(g: &Multigraph, w: &LowDegreeWitness, root: u32, rhs: &BigUint) -> Result<(), String> {
    if !w.source.contains(&w.vertex) {
        return Err(format!("vertex {} not in {:?}", w.vertex, w.source));
    }
    let p = oracle::product_degree(g, w.vertex);
    if p != w.product_degree {
        return Err(format!("reported p={} actual {p}", w.product_degree));
    }
    if w.source.iter().any(|&u| oracle::product_degree(g, u) < p) {
        return Err(format!("vertex {} is not the lowest in {:?}", w.vertex, w.source));
    }
    if !oracle::root_admits(&p, root, rhs) {
        return Err(format!("p={p} exceeds bound (rhs {rhs}, root {root}) on {g:?}"));
    }
    Ok(())
}

/// A heavy-set outcome checked by exhaustive scan: AllLight means no k-set
/// above `light`; a witness set must really be above it.
fn check_heavy(g: &Multigraph, h: &Heavy, k: usize, light: u64, root: u32, rhs: &BigUint) -> Result<bool, String> {
    match h {
        Heavy::AllLight => match oracle::max_set_sum(g, k) {
            Some(m) if m > light => Err(format!("certified all light but a {k}-set spans {m} > {light}")),
            _ => Ok(false),
        },
        Heavy::Witness(w) => {
            if w.source.len() != k || oracle::set_sum(g, &w.source) <= light {
                return Err(format!("source {:?} is not a heavy {k}-set", w.source));
            }
            check_witness(g, w, root, rhs).map(|_| true)
        }
    }
}

type Lemma = fn(&mut ChaCha8Rng) -> Result<bool, String>;

fn lemma_triangle(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let a = rng.gen_range(2..=4u32);
    let n = rng.gen_range(7..=10usize);
    let q = 6 * a as u64 + 3;
    let g = random_member(n, 4, q, a - 1, a + rng.gen_range(1..=3), rng);
    if !oracle::in_class(&g, 4, q) {
        return Err("generator left the class".into());
    }
    let h = heavy_triangle_reduce(&g, a).map_err(|e| e.to_string())?;
    let rhs = oracle::factors_value(&[(a as u64 + 1, 2), (a as u64, n as u64 - 3)]);
    check_heavy(&g, &h, 3, 3 * a as u64 + 2, 1, &rhs)
}

fn lemma_edge(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let a = rng.gen_range(2..=4u32);
    let n = rng.gen_range(7..=10usize);
    let q = 3 * a as u64 + 2;
    let g = random_member(n, 3, q, a - 1, a + rng.gen_range(1..=3), rng);
    if !oracle::in_class(&g, 3, q) {
        return Err("generator left the class".into());
    }
    let h = heavy_edge_reduce(&g, a).map_err(|e| e.to_string())?;
    let rhs = oracle::factors_value(&[(a as u64 + 2, 1), (a as u64, n as u64 - 2)]);
    check_heavy(&g, &h, 2, a as u64 + 1, 1, &rhs)
}

fn lemma_kset(k: usize, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let a = rng.gen_range(2..=4u32);
    let first = kset_threshold(a, k, 10).map_err(|e| e.to_string())?.ok_or("no admissible size up to 10")?;
    let n = rng.gen_range(first..=10usize);
    let q = oracle::sigma_brute(spec(2, 1, a), k + 1);
    let light = oracle::sigma_brute(spec(2, 1, a), k);
    let g = random_member(n, k + 1, q, a - 1, a + rng.gen_range(1..=3), rng);
    if !oracle::in_class(&g, k + 1, q) {
        return Err("generator left the class".into());
    }
    let h = heavy_kset_reduce(&g, a, k, KsetThreshold::Evaluated).map_err(|e| e.to_string())?;
    let m = (n - 1) as u64;
    let c = 3 * k as u64 - 7;
    let rhs = oracle::factors_value(&[(a as u64 + 1, m + c), (a as u64, (k as u64 - 1) * m - c)]);
    check_heavy(&g, &h, k, light, k as u32, &rhs)
}

fn lemma_step_down(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let r = rng.gen_range(2..=4usize);
    let a = rng.gen_range(1..=4u32);
    let d = rng.gen_range(0..a);
    let top = ((r - 1) * (d as usize + 1) + 1).min(9);
    let s = rng.gen_range(2..=top);
    let n = rng.gen_range(s + 1..=10usize);
    let sp = spec(r, d, a);
    let (q_hi, q_lo) = (oracle::sigma_brute(sp, s + 1), oracle::sigma_brute(sp, s));
    let g = random_member(n, s + 1, q_hi, a.saturating_sub(1), a + rng.gen_range(1..=3), rng);
    if !oracle::in_class(&g, s + 1, q_hi) {
        return Err("generator left the class".into());
    }
    let out = step_down_reduce(&g, sp, s).map_err(|e| e.to_string())?;
    match out {
        StepDown::InLowerClass => match oracle::max_set_sum(&g, s) {
            Some(m) if m > q_lo => Err(format!("certified lower class but an {s}-set spans {m} > {q_lo}")),
            _ => Ok(false),
        },
        StepDown::Witness(w) => {
            if w.source.len() != s || oracle::set_sum(&g, &w.source) <= q_lo {
                return Err(format!("source {:?} is not a heavy {s}-set", w.source));
            }
            let pairs = binom(s as u64, 2);
            let inner = oracle::max_product_greedy(pairs, q_hi);
            let cross = oracle::max_product_greedy(s as u64, q_hi - q_lo - 1);
            let rhs = &inner * &inner * Pow::pow(cross, (n - s) as u64);
            check_witness(&g, &w, s as u32, &rhs).map(|_| true)
        }
    }
}

fn lemma_cycle(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let a = rng.gen_range(2..=4u32);
    let n = rng.gen_range(5..=10usize);
    let m = rng.gen_range(5..=n);
    let g = random_class_structure(n, m, a, false, true, rng);
    let w = cycle_reduce(&g, a).map_err(|e| e.to_string())?;
    let len = w.source.len();
    if len < 5 || (0..len).any(|i| g.get(w.source[i], w.source[(i + 1) % len]) != a + 1) {
        return Err(format!("source {:?} is not a cycle of H with length >= 5", w.source));
    }
    let k = (n - 1) as u64;
    let rhs = oracle::factors_value(&[(a as u64, 4 * k - 6), (a as u64 + 1, k + 6)]);
    check_witness(&g, &w, 5, &rhs).map(|_| true)
}

fn ac07(opts: &VerifyOptions) -> Outcome {
    let lemmas: [(&str, Lemma); 7] = [
        ("triangle", lemma_triangle),
        ("edge", lemma_edge),
        ("4-set", |r| lemma_kset(4, r)),
        ("5-set", |r| lemma_kset(5, r)),
        ("6-set", |r| lemma_kset(6, r)),
        ("step-down", lemma_step_down),
        ("cycle", lemma_cycle),
    ];
    let pool = rayon::ThreadPoolBuilder::new().num_threads(resolve_threads(opts.threads)).build().expect("thread pool");
    let mut ok = true;
    let mut parts = Vec::new();
    for (idx, (name, lemma)) in lemmas.iter().enumerate() {
        let results: Vec<Result<bool, String>> = pool.install(|| {
            (0..opts.reduction_instances)
                .into_par_iter()
                .map(|i| lemma(&mut instance_rng(opts.seed, 100 + idx as u64, i)))
                .collect()
        });
        let witnesses = results.iter().filter(|r| matches!(r, Ok(true))).count();
        let light = results.iter().filter(|r| matches!(r, Ok(false))).count();
        match results.iter().position(|r| r.is_err()) {
            Some(i) => {
                ok = false;
                parts.push(format!("{name}: instance {i} failed: {}", results[i].as_ref().unwrap_err()));
            }
            None => parts.push(format!("{name}: {witnesses} witnesses, {light} certified light")),
        }
    }
    outcome(ok, parts.join("; "), format!("{} instances per lemma, no bound violated", opts.reduction_instances))
}

/// One symmetrize plus (when H is a forest) acyclic-transform run. Returns
/// whether the acyclic branch was taken.
fn transform_instance(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let a = rng.gen_range(2..=4u32);
    let n = rng.gen_range(4..=8usize);
    let g = if rng.gen_bool(0.5) {
        let classes = [(2, a as u64 + 1), (3, 3 * a as u64 + 2), (4, 6 * a as u64 + 3)];
        random_member_of(n, &classes, a - 2, a + 1, rng)
    } else {
        let m = rng.gen_range(1..=n);
        let forest = rng.gen_bool(0.5);
        let mut g = random_class_structure(n, m, a, forest, !forest, rng);
        for _ in 0..rng.gen_range(0..=2) {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && g.get(u, v) > 0 {
                g.set(u, v, g.get(u, v) - 1);
            }
        }
        g
    };
    if !in_light_classes(&g, a) {
        return Err("generator left the light classes".into());
    }
    let sym = symmetrize(&g, a).map_err(|e| e.to_string())?;
    for st in &sym.steps {
        if st.product_after < st.product_before || !st.identity_holds(a) {
            return Err(format!("symmetrize step {st:?} lowered P or broke the identity"));
        }
    }
    let p0 = oracle::total_product(&g);
    let p1 = oracle::total_product(&sym.graph);
    if p1 < p0 {
        return Err(format!("symmetrize lowered P from {p0} to {p1}"));
    }
    if clique_classes(&sym.graph, a).is_none() {
        return Err("symmetrize output lacks the clique-class structure".into());
    }
    if !auxiliary_graph(&sym.graph, a).map_err(|e| e.to_string())?.is_forest() {
        return Ok(false);
    }
    let t = acyclic_transform(&sym.graph, a).map_err(|e| e.to_string())?;
    let stages = [p1, oracle::total_product(&t.rewired), oracle::total_product(&t.graph)];
    if stages.windows(2).any(|w| w[1] < w[0]) || stages[..] != t.products[..] {
        return Err(format!("acyclic transform products {stages:?}"));
    }
    if t21_parts(&t.graph, a).is_none() || !oracle::in_class(&t.graph, 4, 6 * a as u64 + 3) {
        return Err("acyclic transform output is not a member of T_{2,1}(a,n) in F(n,4,6a+3)".into());
    }
    Ok(true)
}

fn ac08(opts: &VerifyOptions) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(resolve_threads(opts.threads)).build().expect("thread pool");
    let results: Vec<Result<bool, String>> = pool.install(|| {
        (0..opts.transform_instances).into_par_iter().map(|i| transform_instance(&mut instance_rng(opts.seed, 200, i))).collect()
    });
    let acyclic = results.iter().filter(|r| matches!(r, Ok(true))).count();
    let remark = 7.0 * x_star(2, 2, 1).expect("valid") - 2.0;
    let failure = results.iter().enumerate().find_map(|(i, r)| r.as_ref().err().map(|e| format!("instance {i}: {e}")));
    let ok = failure.is_none() && remark < 0.0;
    let observed = match failure {
        Some(f) => f,
        None => format!(
            "{} instances monotone, {acyclic} through the acyclic transform; 7x(2,1)-2 = {remark:.6}",
            opts.transform_instances
        ),
    };
    outcome(ok, observed, "P never decreases; outputs have clique classes / are T_{2,1} members; 7x(2,1)-2 < 0")
}

fn ac09(opts: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    let (mut exact, mut sandwiched) = (0, 0);
    for s in [4usize, 5] {
        for n in s..=6 {
            for q in 0..=(s * (s - 1)) as u64 {
                let start = Instant::now();
                let r = match ex_pi(n, s, q, &search_budget(opts.threads, SEARCH_LIMIT_S)) {
                    Ok(r) => r,
                    Err(e) => {
                        bad.push(format!("({n},{s},{q}): {e}"));
                        continue;
                    }
                };
                if !r.complete || start.elapsed() > Duration::from_secs_f64(SEARCH_LIMIT_S) {
                    bad.push(format!("({n},{s},{q}) search incomplete"));
                    continue;
                }
                let v = match sparse_value(n, s, q, GIRTH_NODES) {
                    Ok(v) => v,
                    Err(e) => {
                        bad.push(format!("({n},{s},{q}): {e}"));
                        continue;
                    }
                };
                match &v {
                    SparseValue::Exact(x) => {
                        exact += 1;
                        if *x != r.optimum {
                            bad.push(format!("({n},{s},{q}) formula {x} search {}", r.optimum));
                        }
                    }
                    SparseValue::Bounds { lower, upper, .. } => {
                        sandwiched += 1;
                        if !(lower <= &r.optimum && r.optimum <= *upper) {
                            bad.push(format!("({n},{s},{q}) {} not in [{lower}, {upper}]", r.optimum));
                        }
                    }
                }
                match sparse_witness(n, s, q, GIRTH_NODES) {
                    Ok(w) if oracle::in_class(&w, s, q) && oracle::total_product(&w) == *v.lower() => {}
                    Ok(_) => bad.push(format!("({n},{s},{q}) witness fails membership or product")),
                    Err(e) => bad.push(format!("({n},{s},{q}) witness: {e}")),
                }
            }
        }
    }
    let girth = girth_turan(5, 4, GIRTH_NODES).map(|g| g.edges).unwrap_or(0);
    let v549 = sparse_value(5, 4, 9, GIRTH_NODES).ok().map(|v| v.lower().clone());
    let v648 = sparse_value(6, 4, 8, GIRTH_NODES).ok().map(|v| v.lower().clone());
    let named = girth == 5 && v549 == Some(BigUint::from(32u32)) && v648 == Some(BigUint::from(16u32));
    if !named {
        bad.push(format!("girth(5,4)={girth} value(5,4,9)={v549:?} value(6,4,8)={v648:?}"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{exact} closed forms equal the search, {sandwiched} sandwiches hold; (5,4,9)=32, girth(5,4)=5, (6,4,8)=16")
        } else {
            bad.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
        "closed forms = ex_Pi, lower <= ex_Pi <= upper, witnesses attain the lower value",
    )
}

fn ac10(opts: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for s in 2..=4usize {
        for q in 0..=12u64 {
            let mut prev: Option<(usize, BigUint)> = None;
            for n in s..=6 {
                let r = match ex_pi(n, s, q, &search_budget(opts.threads, SEARCH_LIMIT_S)) {
                    Ok(r) if r.complete => r,
                    _ => {
                        prev = None;
                        continue;
                    }
                };
                if let Some((m, x)) = prev.take() {
                    pairs += 1;
                    let (em, en) = (binom(m as u64, 2), binom(n as u64, 2));
                    if Pow::pow(r.optimum.clone(), em) > Pow::pow(x, en) {
                        bad.push(format!("s={s} q={q}: rises from n={m} to n={n}"));
                    }
                }
                prev = Some((n, r.optimum));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{pairs} consecutive pairs nonincreasing") } else { bad.join("; ") },
        "ex_Pi(n+1,s,q)^C(n,2) <= ex_Pi(n,s,q)^C(n+1,2) for s in 2..=4, q <= 12, n < 6",
    )
}

fn ac11(_: &VerifyOptions) -> Outcome {
    let mut bad = Vec::new();
    for n in [6usize, 12, 18, 24] {
        let g = h6(n).expect("n >= 6");
        if !oracle::in_class(&g, 5, 24) {
            bad.push(format!("H6({n}) not in F({n},5,24)"));
        }
    }
    let n = 600;
    let rate = h6(n).expect("n >= 6").factored_product().ln() / binom(n as u64, 2) as f64;
    let target = 3f64.ln() / 3.0 + 2f64.ln() / 2.0;
    if (rate - target).abs() > 10.0 / n as f64 {
        bad.push(format!("rate {rate} vs {target}"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("members for n = 6, 12, 18, 24; rate at n=600 = {rate:.6}") } else { bad.join("; ") },
        format!("membership; |rate - {target:.6}| <= 10/600"),
    )
}

fn ac12(_: &VerifyOptions) -> Outcome {
    let mut problems: Vec<(usize, usize, u64)> = base_cases().into_iter().map(|(n, q, _)| (n, 4, q)).collect();
    for s in [4usize, 5] {
        for n in s..=6 {
            for q in 0..=(s * (s - 1)) as u64 {
                problems.push((n, s, q));
            }
        }
    }
    let runs: Vec<Vec<Option<BigUint>>> = [1usize, 4, 8]
        .iter()
        .map(|&t| {
            problems
                .iter()
                .map(|&(n, s, q)| {
                    ex_pi(n, s, q, &search_budget(t, SEARCH_LIMIT_S)).ok().filter(|r| r.complete).map(|r| r.optimum)
                })
                .collect()
        })
        .collect();
    let incomplete = runs.iter().flatten().filter(|v| v.is_none()).count();
    let differ: Vec<String> = (0..problems.len())
        .filter(|&i| runs[1][i] != runs[0][i] || runs[2][i] != runs[0][i])
        .map(|i| format!("{:?}", problems[i]))
        .collect();
    outcome(
        incomplete == 0 && differ.is_empty(),
        if differ.is_empty() && incomplete == 0 {
            format!("{} optima identical at 1, 4 and 8 threads", problems.len())
        } else {
            format!("{incomplete} incomplete; differing: {}", differ.join(", "))
        },
        "identical complete optima at every thread count",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions { reduction_instances: 200, transform_instances: 200, ..VerifyOptions::default() }
    }

    #[test]
    fn suites_cover_every_criterion_once() {
        let ids = Suite::All.ids();
        for n in 1..=12 {
            assert_eq!(ids.iter().filter(|id| **id == format!("AC{n:02}")).count(), 1);
        }
    }

    #[test]
    fn unknown_check_fails() {
        assert_eq!(run_check("AC99", &quick()).status, Status::Fail);
    }

    #[test]
    fn fast_checks_pass() {
        for id in ["AC01", "AC03", "AC04", "AC05", "AC07", "AC08", "AC11"] {
            let c = run_check(id, &quick());
            assert_eq!(c.status, Status::Pass, "{id}: {}", c.observed);
        }
    }

    #[test]
    fn stretch_skips_on_a_tiny_budget() {
        let opts = VerifyOptions { time_s: 1e-9, ..quick() };
        let c = run_check("AC01-stretch", &opts);
        assert!(matches!(c.status, Status::SkippedBudget | Status::Pass));
    }
}
