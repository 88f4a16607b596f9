//! The Turán-type family T_{r,d}(a,n): a special part V0 with internal
//! multiplicity a-d, parts V1..V_{r-1} with internal multiplicity a, and
//! multiplicity a+1 across parts.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;

use crate::bigprod::PowerProduct;
use crate::error::{invalid, Result};
use crate::multigraph::Multigraph;
use crate::real::ln;
use crate::{binom, Mult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TuranSpec {
    pub r: usize,
    pub d: u32,
    pub a: u32,
}

impl TuranSpec {
    pub fn new(r: usize, d: u32, a: u32) -> Result<Self> {
        if r == 0 {
            return Err(invalid!("r must be at least 1"));
        }
        if a == 0 {
            return Err(invalid!("a must be at least 1"));
        }
        if d >= a {
            return Err(invalid!("d must lie in [0, a-1] (got d={d}, a={a})"));
        }
        Ok(TuranSpec { r, d, a })
    }

    fn inner0(&self) -> u64 {
        (self.a - self.d) as u64
    }
}

/// Part sizes `[v0, v1, ..]`; vertices are numbered part by part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub sizes: Vec<usize>,
}

impl Partition {
    pub fn new(sizes: Vec<usize>) -> Self {
        Partition { sizes }
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Part index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n());
        for (i, &s) in self.sizes.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, s));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    Sum,
    Product,
}

/// `m` vertices spread over `k` parts as evenly as possible, larger parts first.
pub fn balanced(m: usize, k: usize) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    (0..k).map(|i| m / k + usize::from(i < m % k)).collect()
}

fn c2(x: usize) -> u64 {
    binom(x as u64, 2)
}

pub fn build_turan(spec: TuranSpec, part: &Partition) -> Result<Multigraph> {
    if part.sizes.len() != spec.r {
        return Err(invalid!("partition has {} parts but r = {}", part.sizes.len(), spec.r));
    }
    let label = part.labels();
    let a = spec.a;
    Ok(Multigraph::from_fn(label.len(), |u, v| match (label[u], label[v]) {
        (0, 0) => a - spec.d,
        (x, y) if x == y => a,
        _ => (a + 1) as Mult,
    }))
}

fn check_sizes(spec: TuranSpec, sizes: &[usize]) -> Result<()> {
    if sizes.len() != spec.r {
        return Err(invalid!("partition has {} parts but r = {}", sizes.len(), spec.r));
    }
    Ok(())
}

/// e(G) for the member of T_{r,d}(a,n) with the given part sizes.
pub fn partition_sum(spec: TuranSpec, sizes: &[usize]) -> Result<u64> {
    check_sizes(spec, sizes)?;
    let n: usize = sizes.iter().sum();
    let a = spec.a as u64;
    let mut e = (a + 1) * c2(n) - (spec.d as u64 + 1) * c2(sizes[0]);
    for &v in &sizes[1..] {
        e -= c2(v);
    }
    Ok(e)
}

/// P(G) for the member of T_{r,d}(a,n) with the given part sizes.
pub fn partition_product(spec: TuranSpec, sizes: &[usize]) -> Result<PowerProduct> {
    check_sizes(spec, sizes)?;
    let n: usize = sizes.iter().sum();
    let inside0 = c2(sizes[0]);
    let inside: u64 = sizes[1..].iter().map(|&v| c2(v)).sum();
    let a = spec.a as u64;
    Ok(PowerProduct::from_factors([
        (spec.inner0(), inside0),
        (a, inside),
        (a + 1, c2(n) - inside0 - inside),
    ]))
}

fn candidates(spec: TuranSpec, n: usize) -> Vec<Partition> {
    if spec.r == 1 {
        return alloc::vec![Partition::new(alloc::vec![n])];
    }
    (0..=n)
        .map(|v0| {
            let mut sizes = alloc::vec![v0];
            sizes.extend(balanced(n - v0, spec.r - 1));
            Partition::new(sizes)
        })
        .collect()
}

/// Σ_{r,d}(a,n): the largest edge sum in T_{r,d}(a,n).
pub fn sigma(spec: TuranSpec, n: usize) -> u64 {
    candidates(spec, n)
        .iter()
        .map(|p| partition_sum(spec, &p.sizes).expect("sizes match r"))
        .max()
        .unwrap_or(0)
}

/// Σ_{r,d}(a,n+1) - Σ_{r,d}(a,n) in closed form, valid for n >= rd+r-d.
pub fn sigma_increment(spec: TuranSpec, n: usize) -> Result<u64> {
    let (r, d, a) = (spec.r as u64, spec.d as u64, spec.a as u64);
    let m = r * d + r - d;
    let n = n as u64;
    if n < m {
        return Err(invalid!("closed form needs n >= rd+r-d = {m} (got n={n})"));
    }
    let (q, t) = (n / m, n % m);
    let base = (a + 1) * n - (d + 1) * q;
    Ok(if t < r { base } else { base - (t - 1) / (r - 1) })
}

fn product_optima(spec: TuranSpec, n: usize) -> (Vec<Partition>, PowerProduct) {
    let cands: Vec<(Partition, PowerProduct)> = candidates(spec, n)
        .into_iter()
        .map(|p| {
            let v = partition_product(spec, &p.sizes).expect("sizes match r");
            (p, v)
        })
        .collect();
    // Floating logs only discard candidates far below the maximum; the
    // remaining ones are compared exactly.
    let logs: Vec<f64> = cands.iter().map(|c| c.1.ln()).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = 1e-6 * (1.0 + libm::fabs(top));
    let mut best: Option<PowerProduct> = None;
    let mut winners = Vec::new();
    for (i, (p, v)) in cands.into_iter().enumerate() {
        if top.is_finite() && logs[i] < top - slack {
            continue;
        }
        match best.as_ref().map(|b| v.cmp(b)) {
            None | Some(Ordering::Greater) => {
                best = Some(v);
                winners.clear();
                winners.push(p);
            }
            Some(Ordering::Equal) => winners.push(p),
            Some(Ordering::Less) => {}
        }
    }
    (winners, best.unwrap_or_else(PowerProduct::one))
}

/// All sizes of V0 attaining the optimum of `objective` over T_{r,d}(a,n),
/// in increasing order.
pub fn extremal_v0_set(spec: TuranSpec, n: usize, objective: Objective) -> Vec<usize> {
    match objective {
        Objective::Sum => {
            let best = sigma(spec, n);
            candidates(spec, n)
                .into_iter()
                .filter(|p| partition_sum(spec, &p.sizes).expect("sizes match r") == best)
                .map(|p| p.sizes[0])
                .collect()
        }
        Objective::Product => product_optima(spec, n).0.into_iter().map(|p| p.sizes[0]).collect(),
    }
}

/// Π_{r,d}(a,n) in factored form, with the optimal partition of smallest V0.
pub fn pi_max_factored(spec: TuranSpec, n: usize) -> (PowerProduct, Partition) {
    let (mut winners, best) = product_optima(spec, n);
    (best, winners.swap_remove(0))
}

/// Π_{r,d}(a,n): the largest product in T_{r,d}(a,n) and a partition attaining it.
pub fn pi_max(spec: TuranSpec, n: usize) -> (BigUint, Partition) {
    let (p, part) = pi_max_factored(spec, n);
    (p.to_biguint(), part)
}

/// x_{r*}(a,d) = log((a+1)/a) / log((a+1)^r / (a (a-d)^(r-1))), the limiting
/// fraction of vertices in V0 for product maximisers. Taken to be 1 when r = 1.
pub fn x_star(r: usize, a: u32, d: u32) -> Result<f64> {
    TuranSpec::new(r, d, a)?;
    if r == 1 {
        return Ok(1.0);
    }
    let (a, d, r) = (a as f64, d as f64, r as f64);
    Ok(ln((a + 1.0) / a) / (r * ln(a + 1.0) - ln(a) - (r - 1.0) * ln(a - d)))
}

/// π_{r,d}(a), the entropy density of T_{r,d}(a,n): the limit of
/// log Π_{r,d}(a,n) / C(n,2). For r = 1 this is log(a-d).
pub fn entropy_density(spec: TuranSpec) -> f64 {
    let (a, d) = (spec.a as f64, spec.d as f64);
    if spec.r == 1 {
        return ln(a - d);
    }
    let x = x_star(spec.r, spec.a, spec.d).expect("spec already validated");
    let r1 = (spec.r - 1) as f64;
    ln(a + 1.0) - x * x * ln((a + 1.0) / (a - d)) - (1.0 - x) * (1.0 - x) / r1 * ln((a + 1.0) / a)
}

/// Compares π_{r1,d1}(a) with π_{r2,d2}(a) through the key (r, -d).
pub fn entropy_compare(s1: TuranSpec, s2: TuranSpec) -> Result<Ordering> {
    if s1.a != s2.a {
        return Err(invalid!("entropy_compare needs equal a (got {} and {})", s1.a, s2.a));
    }
    Ok(s1.r.cmp(&s2.r).then(s2.d.cmp(&s1.d)))
}

/// n((1-x) log a + x log(a+1)) with x = x_{2*}(a,1): a lower bound on
/// log Π_{2,1}(a,n+1) - log Π_{2,1}(a,n).
pub fn pi_ratio_lower_bound(a: u32, n: usize) -> Result<f64> {
    if a < 2 {
        return Err(invalid!("pi_ratio_lower_bound needs a >= 2"));
    }
    let x = x_star(2, a, 1)?;
    let af = a as f64;
    Ok(n as f64 * ((1.0 - x) * ln(af) + x * ln(af + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: usize, d: u32, a: u32) -> TuranSpec {
        TuranSpec::new(r, d, a).unwrap()
    }

    /// Every composition of n into r ordered parts.
    fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
        if r == 1 {
            return alloc::vec![alloc::vec![n]];
        }
        let mut out = Vec::new();
        for first in 0..=n {
            for mut rest in compositions(n - first, r - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn base_case_products() {
        let g = build_turan(spec(2, 1, 2), &Partition::new(alloc::vec![1, 3])).unwrap();
        assert_eq!(g.total_product(), BigUint::from(216u32));
        assert_eq!(g.total_sum(), 15);
        let g = build_turan(spec(2, 1, 2), &Partition::new(alloc::vec![2, 3])).unwrap();
        assert_eq!(g.total_product(), BigUint::from(5832u32));
        assert_eq!(pi_max(spec(2, 1, 2), 6), (BigUint::from(419904u32), Partition::new(alloc::vec![2, 4])));
        assert_eq!(pi_max(spec(2, 1, 2), 5).1.sizes, alloc::vec![2, 3]);
        assert!(build_turan(spec(2, 1, 2), &Partition::new(alloc::vec![4])).is_err());
    }

    #[test]
    fn single_part_is_constant() {
        let g = build_turan(spec(1, 0, 5), &Partition::new(alloc::vec![4])).unwrap();
        assert_eq!(g, Multigraph::constant(4, 5));
        assert_eq!(pi_max(spec(1, 0, 5), 4).0, BigUint::from(15625u32));
        assert_eq!(extremal_v0_set(spec(1, 0, 3), 7, Objective::Product), alloc::vec![7]);
    }

    #[test]
    fn sigma_examples() {
        for a in 1..6 {
            assert_eq!(sigma(spec(2, 0, a), 1), 0);
            if a >= 2 {
                assert_eq!(sigma(spec(2, 1, a), 4), 6 * a as u64 + 3);
                assert_eq!(sigma(spec(2, 1, a), 6), 15 * a as u64 + 7);
            }
        }
    }

    #[test]
    fn sigma_and_pi_match_all_partitions() {
        for r in 1..=4 {
            for a in 1..=4u32 {
                for d in 0..a {
                    let sp = spec(r, d, a);
                    for n in 0..=8 {
                        let parts = compositions(n, r);
                        let best_sum = parts.iter().map(|p| partition_sum(sp, p).unwrap()).max().unwrap();
                        assert_eq!(sigma(sp, n), best_sum, "{sp:?} n={n}");
                        let best_prod = parts.iter().map(|p| partition_product(sp, p).unwrap().to_biguint()).max().unwrap();
                        assert_eq!(pi_max(sp, n).0, best_prod, "{sp:?} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn increment_matches_differences() {
        for r in 1..=4 {
            for a in 1..=4u32 {
                for d in 0..a {
                    let sp = spec(r, d, a);
                    let m = r * d as usize + r - d as usize;
                    assert!(sigma_increment(sp, m.saturating_sub(1)).is_err() || m == 0);
                    for n in m..60 {
                        assert_eq!(sigma_increment(sp, n).unwrap(), sigma(sp, n + 1) - sigma(sp, n), "{sp:?} n={n}");
                    }
                }
            }
        }
        let a = 5u64;
        for r in 2..5usize {
            for n in r..30 {
                let expected = (a + 1) * n as u64 - (n / r) as u64;
                assert_eq!(sigma_increment(spec(r, 0, 5), n).unwrap(), expected);
            }
        }
    }

    #[test]
    fn x_star_values() {
        let x = x_star(2, 2, 1).unwrap();
        assert!((x - 0.269_577_289_690_814_9).abs() < 1e-12);
        for r in 2..6 {
            for a in 1..10 {
                assert!((x_star(r, a, 0).unwrap() - 1.0 / r as f64).abs() < 1e-12);
            }
        }
        assert!(x_star(2, 2, 2).is_err());
        assert_eq!(x_star(1, 3, 1).unwrap(), 1.0);
    }

    #[test]
    fn entropy_forms_agree() {
        for r in 2..6 {
            for a in 1..12u32 {
                for d in 0..a {
                    let x = x_star(r, a, d).unwrap();
                    let af = a as f64;
                    let alt = ln(af) + (r as f64 - 2.0 + x) / (r as f64 - 1.0) * ln((af + 1.0) / af);
                    assert!((entropy_density(spec(r, d, a)) - alt).abs() < 1e-12);
                }
            }
        }
        assert_eq!(entropy_density(spec(1, 0, 3)), ln(3.0));
    }

    #[test]
    fn compare_by_key() {
        assert_eq!(entropy_compare(spec(2, 0, 4), spec(2, 1, 4)).unwrap(), Ordering::Greater);
        assert_eq!(entropy_compare(spec(3, 2, 4), spec(2, 0, 4)).unwrap(), Ordering::Greater);
        assert_eq!(entropy_compare(spec(3, 2, 4), spec(3, 2, 4)).unwrap(), Ordering::Equal);
        assert!(entropy_compare(spec(3, 2, 4), spec(3, 2, 5)).is_err());
    }

    #[test]
    fn product_v0_near_x_star() {
        let x = x_star(2, 2, 1).unwrap();
        for v0 in extremal_v0_set(spec(2, 1, 2), 30, Objective::Product) {
            let v = v0 as f64;
            assert!(v >= 29.0 * x - 1e-9 && v <= 29.0 * x + 1.0 + 1e-9);
        }
    }

    #[test]
    fn sum_v0_classification_at_multiples() {
        for a in 2..5 {
            for k in 1..10 {
                assert_eq!(extremal_v0_set(spec(2, 1, a), 3 * k, Objective::Sum), alloc::vec![k]);
            }
        }
    }
}
