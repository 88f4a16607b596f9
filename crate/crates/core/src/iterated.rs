//! Iterated constructions T_r(a,n) for admissible pairs (r, a): layer i has
//! r_i parts with internal multiplicity a_i, and every edge from part l1 to a
//! later part l2 has multiplicity a_i + 1 where i is the layer of l1.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;

use crate::bigprod::PowerProduct;
use crate::error::{invalid, Error, Result};
use crate::multigraph::Multigraph;
use crate::real::ln;
use crate::turan::{balanced, Partition};
use crate::{binom, Mult};

/// Default cap on the number of layer compositions enumerated.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    r: Vec<usize>,
    a: Vec<u32>,
}

impl AdmissiblePair {
    pub fn new(r: Vec<usize>, a: Vec<u32>) -> Result<Self> {
        if r.is_empty() || r.len() != a.len() {
            return Err(invalid!("admissible pair needs equal nonzero lengths (got {} and {})", r.len(), a.len()));
        }
        if r.contains(&0) || a.contains(&0) {
            return Err(invalid!("entries of r and a must be positive"));
        }
        if a.windows(2).any(|w| w[0] <= w[1]) {
            return Err(invalid!("a must be strictly decreasing"));
        }
        Ok(AdmissiblePair { r, a })
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    /// Number of layers k.
    pub fn layers(&self) -> usize {
        self.r.len()
    }

    /// Total number of parts R.
    pub fn parts(&self) -> usize {
        self.r.iter().sum()
    }

    fn tail(&self) -> Option<AdmissiblePair> {
        (self.layers() > 1).then(|| AdmissiblePair { r: self.r[1..].to_vec(), a: self.a[1..].to_vec() })
    }

    /// Layer index of each part.
    fn part_layers(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts());
        for (i, &ri) in self.r.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, ri));
        }
        out
    }

    /// Part sizes when layer i holds `totals[i]` vertices split evenly.
    pub fn sizes_for_totals(&self, totals: &[usize]) -> Partition {
        let mut sizes = Vec::with_capacity(self.parts());
        for (&t, &ri) in totals.iter().zip(&self.r) {
            sizes.extend(balanced(t, ri));
        }
        Partition::new(sizes)
    }
}

/// Nonnegative weights on the R parts, summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Weighting {
    pub x: Vec<f64>,
}

pub fn build_iterated(pair: &AdmissiblePair, part: &Partition) -> Result<Multigraph> {
    if part.sizes.len() != pair.parts() {
        return Err(invalid!("partition has {} parts but the pair has R = {}", part.sizes.len(), pair.parts()));
    }
    let layer = pair.part_layers();
    let label = part.labels();
    Ok(Multigraph::from_fn(label.len(), |u, v| {
        let (lu, lv) = (label[u], label[v]);
        let first = lu.min(lv);
        let m = pair.a[layer[first]];
        if lu == lv { m } else { (m + 1) as Mult }
    }))
}

fn c2(x: usize) -> u64 {
    binom(x as u64, 2)
}

/// Edge sum of T_r(a,n) with the given part sizes.
pub fn iterated_sum(pair: &AdmissiblePair, part: &Partition) -> u64 {
    iterated_counts(pair, part).iter().map(|&(m, c)| m * c).sum()
}

/// Product of T_r(a,n) with the given part sizes.
pub fn iterated_product(pair: &AdmissiblePair, part: &Partition) -> PowerProduct {
    PowerProduct::from_factors(iterated_counts(pair, part))
}

/// (multiplicity, number of pairs) for each multiplicity class.
fn iterated_counts(pair: &AdmissiblePair, part: &Partition) -> Vec<(u64, u64)> {
    let layer = pair.part_layers();
    let mut out: Vec<(u64, u64)> = Vec::new();
    let mut add = |m: u64, c: u64| match out.iter_mut().find(|e| e.0 == m) {
        Some(e) => e.1 += c,
        None => out.push((m, c)),
    };
    let sizes = &part.sizes;
    let mut later: usize = sizes.iter().sum();
    for (l, &s) in sizes.iter().enumerate() {
        later -= s;
        let a = pair.a[layer[l]] as u64;
        add(a, c2(s));
        add(a + 1, (s * later) as u64);
    }
    out
}

fn layer_compositions(pair: &AdmissiblePair, n: usize, budget: u64) -> Result<Vec<Vec<usize>>> {
    let k = pair.layers();
    let count = binom((n + k - 1) as u64, (k - 1) as u64);
    if count > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=n {
            cur.push(first);
            go(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Σ_r(a,s) and every vector of layer totals attaining it.
pub fn sigma_iterated_optima(pair: &AdmissiblePair, s: usize, budget: u64) -> Result<(u64, Vec<Vec<usize>>)> {
    let mut best = 0;
    let mut arg = Vec::new();
    for totals in layer_compositions(pair, s, budget)? {
        let e = iterated_sum(pair, &pair.sizes_for_totals(&totals));
        if arg.is_empty() || e > best {
            best = e;
            arg.clear();
        }
        if e == best {
            arg.push(totals);
        }
    }
    Ok((best, arg))
}

/// Σ_r(a,s): the largest edge sum in T_r(a,s).
pub fn sigma_iterated(pair: &AdmissiblePair, s: usize, budget: u64) -> Result<u64> {
    sigma_iterated_optima(pair, s, budget).map(|r| r.0)
}

/// Π_r(a,n): the largest product in T_r(a,n) and a partition attaining it.
pub fn pi_iterated(pair: &AdmissiblePair, n: usize, budget: u64) -> Result<(BigUint, Partition)> {
    let cands: Vec<(Partition, PowerProduct)> = layer_compositions(pair, n, budget)?
        .into_iter()
        .map(|t| {
            let p = pair.sizes_for_totals(&t);
            let v = iterated_product(pair, &p);
            (p, v)
        })
        .collect();
    let logs: Vec<f64> = cands.iter().map(|c| c.1.ln()).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = 1e-6 * (1.0 + libm::fabs(top));
    let mut best: Option<(Partition, PowerProduct)> = None;
    for (i, (p, v)) in cands.into_iter().enumerate() {
        if top.is_finite() && logs[i] < top - slack {
            continue;
        }
        if best.as_ref().is_none_or(|b| v > b.1) {
            best = Some((p, v));
        }
    }
    let (p, v) = best.expect("at least one composition");
    Ok((v.to_biguint(), p))
}

/// Density `sum_l x_l^2 log a_l + 2 sum_{l1<l2} x_l1 x_l2 log(a_l1 + 1)` of a
/// weighting: the limit of log P / C(n,2) when part l holds x_l n vertices.
pub fn weighted_density(pair: &AdmissiblePair, w: &Weighting) -> f64 {
    let layer = pair.part_layers();
    let x = &w.x;
    let mut total = 0.0;
    for l1 in 0..x.len() {
        let a = pair.a[layer[l1]] as f64;
        total += x[l1] * x[l1] * ln(a);
        for l2 in l1 + 1..x.len() {
            total += 2.0 * x[l1] * x[l2] * ln(a + 1.0);
        }
    }
    total
}

fn first_layer_share(pair: &AdmissiblePair, tail_entropy: f64) -> f64 {
    let a1 = pair.a[0] as f64;
    let r1 = pair.r[0] as f64;
    ln((a1 + 1.0) / a1) / ((r1 + 1.0) * ln(a1 + 1.0) - ln(a1) - r1 * tail_entropy)
}

/// π_r(a): the entropy density of the iterated construction.
pub fn iterated_entropy(pair: &AdmissiblePair) -> f64 {
    let a1 = pair.a[0] as f64;
    let r1 = pair.r[0] as f64;
    match pair.tail() {
        None => ln(a1) + (r1 - 1.0) / r1 * ln((a1 + 1.0) / a1),
        Some(tail) => {
            let t = iterated_entropy(&tail);
            let num = r1 * ln(a1 + 1.0) - ln(a1) - (r1 - 1.0) * t;
            let den = (r1 + 1.0) * ln(a1 + 1.0) - ln(a1) - r1 * t;
            ln(a1) + num / den * ln((a1 + 1.0) / a1)
        }
    }
}

/// The product-optimal weighting: the first layer takes 1 - p1 split evenly
/// over its r1 parts and the tail is the scaled p.o.w. of the remaining layers.
pub fn pow(pair: &AdmissiblePair) -> Weighting {
    let r1 = pair.r[0];
    match pair.tail() {
        None => Weighting { x: alloc::vec![1.0 / r1 as f64; r1] },
        Some(tail) => {
            let p1 = first_layer_share(pair, iterated_entropy(&tail));
            let mut x = alloc::vec![(1.0 - p1) / r1 as f64; r1];
            x.extend(pow(&tail).x.into_iter().map(|v| v * p1));
            Weighting { x }
        }
    }
}

/// Share p1 of the layers after the first in the p.o.w.; None for one layer.
pub fn tail_share(pair: &AdmissiblePair) -> Option<f64> {
    pair.tail().map(|t| first_layer_share(pair, iterated_entropy(&t)))
}

/// The linear order ≺ on admissible pairs: coordinates (r_i, a_i) compare by
/// a first and then r, and a proper prefix precedes its extensions.
pub fn admissible_cmp(p: &AdmissiblePair, q: &AdmissiblePair) -> Ordering {
    for i in 0..p.layers().min(q.layers()) {
        let c = p.a[i].cmp(&q.a[i]).then(p.r[i].cmp(&q.r[i]));
        if c != Ordering::Equal {
            return c;
        }
    }
    p.layers().cmp(&q.layers())
}

pub fn admissible_less(p: &AdmissiblePair, q: &AdmissiblePair) -> bool {
    admissible_cmp(p, q) == Ordering::Less
}

/// Finite family of admissible pairs: at most `max_k` layers, every r_i at
/// most `max_r`, and a_1 at most `max_a1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Universe {
    pub max_k: usize,
    pub max_r: usize,
    pub max_a1: u32,
}

impl Default for Universe {
    fn default() -> Self {
        Universe { max_k: 3, max_r: 4, max_a1: 8 }
    }
}

impl Universe {
    pub fn pairs(&self) -> Vec<AdmissiblePair> {
        let mut out = Vec::new();
        for k in 1..=self.max_k {
            let mut avec = Vec::new();
            decreasing(k, self.max_a1, &mut avec, &mut |a| {
                let mut r = alloc::vec![1usize; k];
                loop {
                    out.push(AdmissiblePair { r: r.clone(), a: a.to_vec() });
                    let mut i = 0;
                    while i < k && r[i] == self.max_r {
                        r[i] = 1;
                        i += 1;
                    }
                    if i == k {
                        break;
                    }
                    r[i] += 1;
                }
            });
        }
        out
    }
}

fn decreasing(k: usize, hi: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    let need = (k - cur.len()) as u32;
    for v in (need..=hi).rev() {
        cur.push(v);
        decreasing(k, v - 1, cur, f);
        cur.pop();
    }
}

/// Whether no pair of the universe has Σ at s at most that of `pair` together
/// with a strictly larger entropy. When dominated, the certificate is the
/// dominating pair of largest entropy.
pub fn is_s_dominant(pair: &AdmissiblePair, s: usize, universe: Universe) -> Result<(bool, Option<AdmissiblePair>)> {
    if universe.max_k == 0 || universe.max_r == 0 || universe.max_a1 == 0 {
        return Err(invalid!("empty universe"));
    }
    let own_sigma = sigma_iterated(pair, s, DEFAULT_ENUMERATION_BUDGET)?;
    let own_pi = iterated_entropy(pair);
    let mut cert: Option<(f64, AdmissiblePair)> = None;
    for other in universe.pairs() {
        let pi = iterated_entropy(&other);
        if pi <= own_pi + 1e-12 || cert.as_ref().is_some_and(|c| pi <= c.0) {
            continue;
        }
        if sigma_iterated(&other, s, DEFAULT_ENUMERATION_BUDGET)? <= own_sigma {
            cert = Some((pi, other));
        }
    }
    Ok(match cert {
        None => (true, None),
        Some((_, p)) => (false, Some(p)),
    })
}
