//! Exact products: plain big integers, factored products of powers, and
//! bounds with a common fractional exponent.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::real;

/// Exact product of a sequence of small factors.
pub fn product_of<I: IntoIterator<Item = u64>>(factors: I) -> BigUint {
    let mut out = BigUint::one();
    let mut acc: u64 = 1;
    for f in factors {
        if f == 0 {
            return BigUint::zero();
        }
        match acc.checked_mul(f) {
            Some(x) => acc = x,
            None => {
                out *= acc;
                acc = f;
            }
        }
    }
    out * acc
}

/// `base^exp` as a big integer.
pub fn pow(base: u64, exp: u64) -> BigUint {
    num_traits::Pow::pow(BigUint::from(base), exp)
}

/// Maximum of `a^(n-t) (a+1)^t`: the largest product of n nonnegative
/// integers summing to `a*n + t`.
pub fn amgm_bound(a: u64, n: u64, t: u64) -> Result<BigUint> {
    if a == 0 || n == 0 {
        return Err(invalid!("amgm_bound needs a >= 1 and n >= 1 (got a={a}, n={n})"));
    }
    if t > n {
        return Err(invalid!("amgm_bound needs t in [0, n] (got t={t}, n={n})"));
    }
    Ok(pow(a, n - t) * pow(a + 1, t))
}

/// `(a-1) a^(n-t-2) (a+1)^(t+1)`: the largest product when one of the n
/// factors is pinned to `a-1` and the total is `a*n + t`.
pub fn amgm_bound_fixed_factor(a: u64, n: u64, t: u64) -> Result<BigUint> {
    if a == 0 || n < 2 {
        return Err(invalid!("amgm_bound_fixed_factor needs a >= 1 and n >= 2 (got a={a}, n={n})"));
    }
    if t + 2 > n {
        return Err(invalid!("amgm_bound_fixed_factor needs t <= n-2 (got t={t}, n={n})"));
    }
    Ok(BigUint::from(a - 1) * pow(a, n - t - 2) * pow(a + 1, t + 1))
}

/// Largest product of `m` nonnegative integers whose sum is at most `sum`.
/// The empty product is 1.
pub fn max_product_with_sum(m: u64, sum: u64) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    let (a, t) = (sum / m, sum % m);
    pow(a, m - t) * pow(a + 1, t)
}

/// [`max_product_with_sum`] in factored form.
pub fn max_product_factored(m: u64, sum: u64) -> PowerProduct {
    if m == 0 {
        return PowerProduct::one();
    }
    let (a, t) = (sum / m, sum % m);
    PowerProduct::from_factors([(a, m - t), (a + 1, t)])
}

/// A product `prod base^exp` kept in factored form.
///
/// Comparison is exact: common factors cancel and only the differing powers
/// are expanded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PowerProduct {
    /// Sorted by base; bases are at least 2 and exponents positive, except
    /// that a zero product is stored as the single factor `0^1`.
    factors: Vec<(u64, u64)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct { factors: Vec::new() }
    }

    pub fn from_factors<I: IntoIterator<Item = (u64, u64)>>(factors: I) -> Self {
        let mut p = PowerProduct::one();
        for (b, e) in factors {
            p.mul_pow(b, e);
        }
        p
    }

    pub fn mul_pow(&mut self, base: u64, exp: u64) {
        if exp == 0 || base == 1 || self.is_zero() {
            return;
        }
        if base == 0 {
            self.factors.clear();
            self.factors.push((0, 1));
            return;
        }
        match self.factors.binary_search_by_key(&base, |f| f.0) {
            Ok(i) => self.factors[i].1 += exp,
            Err(i) => self.factors.insert(i, (base, exp)),
        }
    }

    pub fn mul(&mut self, other: &PowerProduct) {
        for &(b, e) in &other.factors {
            self.mul_pow(b, e);
        }
    }

    /// self^k.
    pub fn powi(&self, k: u64) -> PowerProduct {
        PowerProduct::from_factors(self.factors.iter().map(|&(b, e)| (b, e * k)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.factors.first(), Some((0, _)))
    }

    pub fn factors(&self) -> &[(u64, u64)] {
        &self.factors
    }

    /// Exponent of `base` in the factored form (0 when absent).
    pub fn exponent(&self, base: u64) -> u64 {
        self.factors.iter().find(|f| f.0 == base).map_or(0, |f| f.1)
    }

    pub fn to_biguint(&self) -> BigUint {
        if self.is_zero() {
            return BigUint::zero();
        }
        let mut out = BigUint::one();
        for &(b, e) in &self.factors {
            out *= pow(b, e);
        }
        out
    }

    /// Natural logarithm; `-inf` for the zero product.
    pub fn ln(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.factors.iter().map(|&(b, e)| e as f64 * real::ln(b as f64)).sum()
    }
}

impl Ord for PowerProduct {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let mut left = PowerProduct::one();
        let mut right = PowerProduct::one();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            let ka = a.get(i).map_or(u64::MAX, |f| f.0);
            let kb = b.get(j).map_or(u64::MAX, |f| f.0);
            if ka < kb {
                left.mul_pow(ka, a[i].1);
                i += 1;
            } else if kb < ka {
                right.mul_pow(kb, b[j].1);
                j += 1;
            } else {
                let (ea, eb) = (a[i].1, b[j].1);
                if ea > eb {
                    left.mul_pow(ka, ea - eb);
                } else {
                    right.mul_pow(ka, eb - ea);
                }
                i += 1;
                j += 1;
            }
        }
        left.to_biguint().cmp(&right.to_biguint())
    }
}

impl PartialOrd for PowerProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (b, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{b}^{e}")?;
        }
        Ok(())
    }
}

/// The bound `(prod base^exp)^(1/root)` with integer, possibly negative,
/// exponents. Membership is decided by raising the candidate to the power
/// `root`, never through floating point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBound {
    pub root: u32,
    pub factors: Vec<(u64, i64)>,
}

impl RootBound {
    pub fn new(root: u32, factors: Vec<(u64, i64)>) -> Self {
        assert!(root >= 1, "root must be positive");
        RootBound { root, factors }
    }

    /// An integer-valued bound (root 1).
    pub fn exact(p: &PowerProduct) -> Self {
        RootBound {
            root: 1,
            factors: p.factors().iter().map(|&(b, e)| (b, e as i64)).collect(),
        }
    }

    /// The k-th root of a factored product.
    pub fn root_of(p: &PowerProduct, root: u32) -> Self {
        let mut b = RootBound::exact(p);
        b.root = root;
        b
    }

    /// True iff `value <= self`.
    pub fn admits(&self, value: &BigUint) -> bool {
        let mut lhs = num_traits::Pow::pow(value.clone(), self.root);
        let mut rhs = BigUint::one();
        for &(b, e) in &self.factors {
            if e >= 0 {
                rhs *= pow(b, e as u64);
            } else {
                lhs *= pow(b, e.unsigned_abs());
            }
        }
        lhs <= rhs
    }

    pub fn ln(&self) -> f64 {
        let total: f64 = self.factors.iter().map(|&(b, e)| e as f64 * real::ln(b as f64)).sum();
        total / self.root as f64
    }

    /// Human-readable form such as `(3^9 * 2^11)^(1/4)`.
    pub fn render(&self) -> String {
        let mut body = String::new();
        for (k, (b, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                body.push_str(" * ");
            }
            body.push_str(&alloc::format!("{b}^{e}"));
        }
        if body.is_empty() {
            body.push('1');
        }
        if self.root == 1 {
            body
        } else {
            alloc::format!("({body})^(1/{})", self.root)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max_product(n: usize, total: u64) -> u64 {
        fn go(left: usize, total: u64, acc: u64, best: &mut u64) {
            if left == 1 {
                *best = (*best).max(acc * total);
                return;
            }
            for w in 0..=total {
                go(left - 1, total - w, acc * w, best);
            }
        }
        let mut best = 0;
        go(n, total, 1, &mut best);
        best
    }

    #[test]
    fn amgm_examples() {
        assert_eq!(amgm_bound(2, 3, 0).unwrap(), BigUint::from(8u32));
        assert_eq!(amgm_bound(2, 6, 3).unwrap(), BigUint::from(216u32));
        assert!(amgm_bound(2, 3, 4).is_err());
        assert!(amgm_bound_fixed_factor(2, 3, 2).is_err());
    }

    #[test]
    fn amgm_matches_exhaustive_maximum() {
        for a in 1..=4u64 {
            for n in 1..=7u64 {
                for t in 0..=n {
                    let brute = brute_max_product(n as usize, a * n + t);
                    assert_eq!(amgm_bound(a, n, t).unwrap(), BigUint::from(brute), "a={a} n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn fixed_factor_matches_exhaustive_maximum() {
        for a in 1..=4u64 {
            for n in 2..=6u64 {
                for t in 0..=n - 2 {
                    let rest = brute_max_product(n as usize - 1, a * n + t - (a - 1));
                    let brute = (a - 1) * rest;
                    assert_eq!(amgm_bound_fixed_factor(a, n, t).unwrap(), BigUint::from(brute));
                }
            }
        }
    }

    #[test]
    fn product_of_handles_overflow_and_zero() {
        let big = product_of(std::iter::repeat_n(1u64 << 31, 5));
        assert_eq!(big, pow(2, 155));
        assert!(product_of([3, 0, 5]).is_zero());
    }

    #[test]
    fn power_product_compares_exactly() {
        let a = PowerProduct::from_factors([(2, 10), (3, 5)]);
        let b = PowerProduct::from_factors([(2, 9), (3, 5), (5, 1)]);
        assert_eq!(a.to_biguint(), BigUint::from(1024u32 * 243));
        assert_eq!(a.cmp(&b), a.to_biguint().cmp(&b.to_biguint()));
        assert!(PowerProduct::from_factors([(0, 1), (7, 3)]) < PowerProduct::one());
    }

    #[test]
    fn root_bound_is_exact_at_the_boundary() {
        // 8^(1/3) = 2
        let b = RootBound::new(3, alloc::vec![(2, 3)]);
        assert!(b.admits(&BigUint::from(2u32)));
        assert!(!b.admits(&BigUint::from(3u32)));
        let neg = RootBound::new(1, alloc::vec![(2, 5), (2, -2)]);
        assert!(neg.admits(&BigUint::from(8u32)));
        assert!(!neg.admits(&BigUint::from(9u32)));
    }
}
