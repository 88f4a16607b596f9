//! Dense multigraphs with exact sum and product queries.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bigprod::{product_of, PowerProduct};
use crate::error::{invalid, Error, Result};
use crate::Mult;

/// A multigraph on vertices `0..n`: one multiplicity per unordered pair,
/// stored as the row-major upper triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    w: Vec<Mult>,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Multigraph {
    /// Every pair gets multiplicity `m`.
    pub fn constant(n: usize, m: Mult) -> Self {
        Multigraph { n, w: alloc::vec![m; pair_count(n)] }
    }

    pub fn empty(n: usize) -> Self {
        Self::constant(n, 0)
    }

    /// Builds the multigraph with `w(u,v) = f(u,v)` for `u < v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Mult) -> Self {
        let mut w = Vec::with_capacity(pair_count(n));
        for u in 0..n {
            for v in u + 1..n {
                w.push(f(u, v));
            }
        }
        Multigraph { n, w }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicities in row-major upper-triangle order.
    pub fn weights(&self) -> &[Mult] {
        &self.w
    }

    #[inline]
    fn index(&self, u: usize, v: usize) -> usize {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        debug_assert!(u != v && v < self.n);
        u * self.n - u * (u + 1) / 2 + (v - u - 1)
    }

    /// Multiplicity of the pair `{u, v}`. Panics if `u == v` or out of range.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Mult {
        assert!(u != v && u < self.n && v < self.n, "bad pair ({u},{v}) for n={}", self.n);
        self.w[self.index(u, v)]
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, m: Mult) {
        assert!(u != v && u < self.n && v < self.n, "bad pair ({u},{v}) for n={}", self.n);
        let i = self.index(u, v);
        self.w[i] = m;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    fn check_set(&self, x: &[usize]) -> Result<()> {
        for (i, &v) in x.iter().enumerate() {
            self.check_vertex(v)?;
            if x[..i].contains(&v) {
                return Err(invalid!("vertex {v} repeated in vertex set"));
            }
        }
        Ok(())
    }

    /// Sum of multiplicities over pairs inside `x`.
    pub fn edge_sum(&self, x: &[usize]) -> Result<u64> {
        self.check_set(x)?;
        Ok(self.sum_unchecked(x))
    }

    pub(crate) fn sum_unchecked(&self, x: &[usize]) -> u64 {
        let mut s = 0u64;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                s += self.get(x[i], x[j]) as u64;
            }
        }
        s
    }

    /// Product of multiplicities over pairs inside `x` (empty product 1).
    pub fn edge_product(&self, x: &[usize]) -> Result<BigUint> {
        self.check_set(x)?;
        let mut f = Vec::new();
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                f.push(self.get(x[i], x[j]) as u64);
            }
        }
        Ok(product_of(f))
    }

    /// e(G): the sum of all multiplicities.
    pub fn total_sum(&self) -> u64 {
        self.w.iter().map(|&m| m as u64).sum()
    }

    /// P(G): the product of all multiplicities.
    pub fn total_product(&self) -> BigUint {
        self.factored_product().to_biguint()
    }

    /// P(G) as a product of powers of the distinct multiplicities.
    pub fn factored_product(&self) -> PowerProduct {
        let mut counts: Vec<(u64, u64)> = Vec::new();
        for &m in &self.w {
            match counts.iter_mut().find(|c| c.0 == m as u64) {
                Some(c) => c.1 += 1,
                None => counts.push((m as u64, 1)),
            }
        }
        PowerProduct::from_factors(counts)
    }

    /// d(v): the sum of multiplicities at `v`.
    pub fn degree(&self, v: usize) -> Result<u64> {
        self.check_vertex(v)?;
        Ok((0..self.n).filter(|&u| u != v).map(|u| self.get(u, v) as u64).sum())
    }

    /// p(v): the product of multiplicities at `v`.
    pub fn product_degree(&self, v: usize) -> Result<BigUint> {
        self.check_vertex(v)?;
        Ok(product_of((0..self.n).filter(|&u| u != v).map(|u| self.get(u, v) as u64)))
    }

    /// Largest multiplicity (0 for fewer than two vertices).
    pub fn max_multiplicity(&self) -> Mult {
        self.w.iter().copied().max().unwrap_or(0)
    }

    /// Whether every s-set spans at most q (vacuous when n < s).
    pub fn is_sq_graph(&self, s: usize, q: u64) -> bool {
        self.violating_set(s, q).is_none()
    }

    /// The lexicographically first s-set spanning more than q, with its excess.
    pub fn violating_set(&self, s: usize, q: u64) -> Option<(Vec<usize>, u64)> {
        self.first_set_where(s, |sum| sum > q).map(|(x, sum)| (x, sum - q))
    }

    /// The lexicographically first s-set whose edge sum satisfies `pred`,
    /// together with that sum.
    pub fn first_set_where(&self, s: usize, mut pred: impl FnMut(u64) -> bool) -> Option<(Vec<usize>, u64)> {
        if s > self.n {
            return None;
        }
        let mut chosen = Vec::with_capacity(s);
        self.scan_sets(s, 0, 0, &mut chosen, &mut pred)
    }

    fn scan_sets(
        &self,
        s: usize,
        start: usize,
        sum: u64,
        chosen: &mut Vec<usize>,
        pred: &mut impl FnMut(u64) -> bool,
    ) -> Option<(Vec<usize>, u64)> {
        if chosen.len() == s {
            return if pred(sum) { Some((chosen.clone(), sum)) } else { None };
        }
        let need = s - chosen.len();
        for v in start..=self.n - need {
            let add: u64 = chosen.iter().map(|&u| self.get(u, v) as u64).sum();
            chosen.push(v);
            let hit = self.scan_sets(s, v + 1, sum + add, chosen, pred);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    /// Largest edge sum over all s-sets (None when n < s).
    pub fn max_set_sum(&self, s: usize) -> Option<u64> {
        let mut best = None;
        self.first_set_where(s, |sum| {
            best = Some(best.map_or(sum, |b: u64| b.max(sum)));
            false
        });
        best
    }

    /// The sub-multigraph induced on `x`, relabelled `0..x.len()` in the
    /// given order.
    pub fn induced(&self, x: &[usize]) -> Result<Multigraph> {
        self.check_set(x)?;
        Ok(Multigraph::from_fn(x.len(), |i, j| self.get(x[i], x[j])))
    }

    /// G - v, with the remaining vertices relabelled in order.
    pub fn remove_vertex(&self, v: usize) -> Result<Multigraph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }
}
