//! Brute-force reference computations that share no code with the
//! optimised paths they check.

use mgx_core::turan::TuranSpec;
use mgx_core::{BigUint, Multigraph};
use num_traits::{One, Pow};

/// Every k-subset of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn set_sum(g: &Multigraph, set: &[usize]) -> u64 {
    let mut total = 0;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            total += g.get(u, v) as u64;
        }
    }
    total
}

/// The largest edge sum over all k-sets, by scanning every one of them.
pub fn max_set_sum(g: &Multigraph, k: usize) -> Option<u64> {
    subsets(g.n(), k).iter().map(|x| set_sum(g, x)).max()
}

pub fn in_class(g: &Multigraph, s: usize, q: u64) -> bool {
    max_set_sum(g, s).is_none_or(|m| m <= q)
}

pub fn product_degree(g: &Multigraph, v: usize) -> BigUint {
    let mut p = BigUint::one();
    for u in 0..g.n() {
        if u != v {
            p *= g.get(u, v);
        }
    }
    p
}

pub fn total_product(g: &Multigraph) -> BigUint {
    let mut p = BigUint::one();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            p *= g.get(u, v);
        }
    }
    p
}

/// prod base^exp.
pub fn factors_value(factors: &[(u64, u64)]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, &(b, e)| acc * Pow::pow(BigUint::from(b), e))
}

/// Whether value^root <= rhs.
pub fn root_admits(value: &BigUint, root: u32, rhs: &BigUint) -> bool {
    &Pow::pow(value.clone(), root) <= rhs
}

/// Largest product of m nonnegative integers summing to `sum`, by adding
/// one unit at a time to a smallest entry.
pub fn max_product_greedy(m: u64, sum: u64) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    let mut parts = vec![0u64; m as usize];
    for _ in 0..sum {
        let i = (0..parts.len()).min_by_key(|&i| parts[i]).expect("m > 0");
        parts[i] += 1;
    }
    parts.into_iter().fold(BigUint::one(), |acc, x| acc * x)
}

/// Every composition of n into k ordered parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Multiplicity of u v in the T_{r,d}(a,n) member with part index `label`.
fn turan_mult(spec: TuranSpec, x: usize, y: usize) -> u64 {
    match (x == y, x) {
        (true, 0) => (spec.a - spec.d) as u64,
        (true, _) => spec.a as u64,
        (false, _) => spec.a as u64 + 1,
    }
}

fn labels(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect()
}

/// Σ_{r,d}(a,n) as a maximum over every partition, counting pairs one by one.
pub fn sigma_brute(spec: TuranSpec, n: usize) -> u64 {
    compositions(n, spec.r)
        .iter()
        .map(|sizes| {
            let l = labels(sizes);
            let mut e = 0;
            for u in 0..n {
                for v in u + 1..n {
                    e += turan_mult(spec, l[u], l[v]);
                }
            }
            e
        })
        .max()
        .unwrap_or(0)
}

/// Π_{r,d}(a,n) over every partition, with exact products.
pub fn pi_brute(spec: TuranSpec, n: usize) -> BigUint {
    compositions(n, spec.r)
        .iter()
        .map(|sizes| {
            let l = labels(sizes);
            let mut p = BigUint::one();
            for u in 0..n {
                for v in u + 1..n {
                    p *= turan_mult(spec, l[u], l[v]);
                }
            }
            p
        })
        .max()
        .unwrap_or_else(BigUint::one)
}
