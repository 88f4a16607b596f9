//! ex_Π(n,s,q) for q <= 2 C(s,2), where every multiplicity is 0, 1 or 2
//! in extremal graphs and the answer is a power of two governed by which
//! simple graphs the 2-edges may form.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bigprod::pow;
use crate::error::{invalid, Result};
use crate::girth::girth_turan;
use crate::multigraph::Multigraph;
use crate::turan::{balanced, build_turan, Partition, TuranSpec};
use crate::{binom, Mult};

/// The eight rows of the sparse classification. Rows are tried in order,
/// so for small s, where ranges overlap, the earlier exact row wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SparseRegime {
    /// q < C(s,2): some pair in every s-set is 0.
    Zero,
    /// q = C(s,2): the all-1 multigraph.
    One,
    /// C(s,2) < q < C(s,2) + ⌊s/2⌋: a matching of q - C(s,2) doubled pairs.
    Power { exponent: u64 },
    /// C(s,2) + ⌊s/2⌋ <= q < C(s,2) + s - 2: 2^Θ(n).
    LinearTheta,
    /// q = C(s,2) + s - 2: 2^⌊(s-2)n/(s-1)⌋.
    LinearExact,
    /// q = C(s,2) + s - 1: 2^ex(n,{C3..Cs}).
    Girth,
    /// C(s,2) + s <= q < C(s,2) + ⌊s²/4⌋: 2^o(n²).
    Subquadratic,
    /// C(s,2) + ⌊s²/4⌋ <= q <= 2 C(s,2): 2^Θ(n²).
    QuadraticTheta,
}

impl SparseRegime {
    pub fn tag(&self) -> &'static str {
        match self {
            SparseRegime::Zero => "ZERO",
            SparseRegime::One => "ONE",
            SparseRegime::Power { .. } => "POWER",
            SparseRegime::LinearTheta => "LINEAR_THETA",
            SparseRegime::LinearExact => "LINEAR_EXACT",
            SparseRegime::Girth => "GIRTH",
            SparseRegime::Subquadratic => "SUBQUADRATIC",
            SparseRegime::QuadraticTheta => "QUADRATIC_THETA",
        }
    }
}

pub fn classify(s: usize, q: u64) -> Result<SparseRegime> {
    if s < 2 {
        return Err(invalid!("sparse classification needs s >= 2 (got {s})"));
    }
    let s64 = s as u64;
    let c = binom(s64, 2);
    if q > 2 * c {
        return Err(invalid!("q = {q} exceeds 2 C(s,2) = {}", 2 * c));
    }
    Ok(if q < c {
        SparseRegime::Zero
    } else if q == c {
        SparseRegime::One
    } else if q < c + s64 / 2 {
        SparseRegime::Power { exponent: q - c }
    } else if q < c + s64 - 2 {
        SparseRegime::LinearTheta
    } else if q == c + s64 - 2 {
        SparseRegime::LinearExact
    } else if q == c + s64 - 1 {
        SparseRegime::Girth
    } else if q < c + s64 * s64 / 4 {
        SparseRegime::Subquadratic
    } else {
        SparseRegime::QuadraticTheta
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SparseValue {
    Exact(BigUint),
    Bounds {
        lower: BigUint,
        upper: BigUint,
        /// False when `upper` is only the trivial cap.
        upper_tight: bool,
        /// True when the regime is only known up to the exponent's order of growth.
        asymptotic: bool,
        provenance: &'static str,
    },
}

impl SparseValue {
    pub fn lower(&self) -> &BigUint {
        match self {
            SparseValue::Exact(v) => v,
            SparseValue::Bounds { lower, .. } => lower,
        }
    }
}

fn check(n: usize, s: usize, q: u64) -> Result<SparseRegime> {
    let regime = classify(s, q)?;
    if n < s {
        return Err(invalid!("need n >= s (got n={n}, s={s})"));
    }
    Ok(regime)
}

fn two_pow(e: u64) -> BigUint {
    pow(2, e)
}

/// The value (or bounds) of ex_Π(n,s,q) in the sparse range. The girth row
/// runs an exact girth search with the given node budget and falls back to
/// bounds if it does not finish.
pub fn sparse_value(n: usize, s: usize, q: u64, max_nodes: u64) -> Result<SparseValue> {
    let regime = check(n, s, q)?;
    let (n64, s64) = (n as u64, s as u64);
    let pairs = binom(n64, 2);
    Ok(match regime {
        SparseRegime::Zero => SparseValue::Exact(BigUint::zero()),
        SparseRegime::One => SparseValue::Exact(BigUint::one()),
        SparseRegime::Power { exponent } => SparseValue::Exact(two_pow(exponent)),
        SparseRegime::LinearExact => SparseValue::Exact(two_pow((s64 - 2) * n64 / (s64 - 1))),
        SparseRegime::LinearTheta => SparseValue::Bounds {
            lower: two_pow(n64 / 2),
            upper: two_pow((s64 - 3) * n64).sqrt(),
            upper_tight: true,
            asymptotic: false,
            provenance: "maximal matching below; components carry at most 2^(s-3) each above",
        },
        SparseRegime::Girth if s == 2 => SparseValue::Exact(two_pow(pairs)),
        SparseRegime::Girth => {
            let g = girth_turan(n, s, max_nodes)?;
            if g.complete {
                SparseValue::Exact(two_pow(g.edges as u64))
            } else {
                SparseValue::Bounds {
                    lower: two_pow(g.edges as u64),
                    upper: two_pow(pairs),
                    upper_tight: false,
                    asymptotic: false,
                    provenance: "girth search stopped by its budget",
                }
            }
        }
        SparseRegime::Subquadratic => {
            let g = girth_turan(n, s, max_nodes)?;
            SparseValue::Bounds {
                lower: two_pow(g.edges as u64),
                upper: pow(s64 * s64 / 4 + 1, pairs),
                upper_tight: false,
                asymptotic: true,
                provenance: "doubled pairs on a graph of girth > s below; trivial cap above",
            }
        }
        SparseRegime::QuadraticTheta => SparseValue::Bounds {
            lower: two_pow(n64 * n64 / 4),
            upper: two_pow(pairs),
            upper_tight: true,
            asymptotic: false,
            provenance: "doubled complete bipartite pairs below; every pair at most 2 above",
        },
    })
}

fn ones_with_doubled(n: usize, doubled: &[(usize, usize)]) -> Multigraph {
    let mut g = Multigraph::constant(n, 1);
    for &(u, v) in doubled {
        g.set(u, v, 2);
    }
    g
}

/// A member of F(n,s,q) whose product equals the exact value or lower bound
/// of its regime.
pub fn sparse_witness(n: usize, s: usize, q: u64, max_nodes: u64) -> Result<Multigraph> {
    let regime = check(n, s, q)?;
    Ok(match regime {
        SparseRegime::Zero => Multigraph::empty(n),
        SparseRegime::One => Multigraph::constant(n, 1),
        SparseRegime::Power { exponent } => {
            let m: Vec<(usize, usize)> = (0..exponent as usize).map(|i| (2 * i, 2 * i + 1)).collect();
            ones_with_doubled(n, &m)
        }
        SparseRegime::LinearTheta => {
            let m: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
            ones_with_doubled(n, &m)
        }
        SparseRegime::LinearExact => {
            // disjoint paths on s-1 vertices: every s-set meets two of them
            let len = s - 1;
            let m: Vec<(usize, usize)> = (1..n).filter(|v| v % len != 0).map(|v| (v - 1, v)).collect();
            ones_with_doubled(n, &m)
        }
        SparseRegime::Girth if s == 2 => Multigraph::constant(n, 2),
        SparseRegime::Girth | SparseRegime::Subquadratic => {
            let h = girth_turan(n, s, max_nodes)?.witness;
            Multigraph::from_fn(n, |u, v| 1 + h.get(u, v))
        }
        SparseRegime::QuadraticTheta => {
            let spec = TuranSpec::new(2, 0, 1).expect("valid spec");
            build_turan(spec, &Partition::new(balanced(n, 2)))?
        }
    })
}

/// H6(n): six balanced parts, multiplicity 1 inside parts, 3 between
/// cyclically consecutive parts and 2 between the rest. A member of F(n,5,24).
pub fn h6(n: usize) -> Result<Multigraph> {
    if n < 6 {
        return Err(invalid!("h6 needs n >= 6 (got {n})"));
    }
    let label = Partition::new(balanced(n, 6)).labels();
    Ok(Multigraph::from_fn(n, |u, v| {
        let (x, y) = (label[u], label[v]);
        let gap = (x + 6 - y) % 6;
        let m: Mult = if x == y {
            1
        } else if gap == 1 || gap == 5 {
            3
        } else {
            2
        };
        m
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_rows() {
        assert_eq!(classify(4, 7).unwrap(), SparseRegime::Power { exponent: 1 });
        assert_eq!(classify(4, 8).unwrap(), SparseRegime::LinearExact);
        assert_eq!(classify(4, 9).unwrap(), SparseRegime::Girth);
        assert_eq!(classify(4, 10).unwrap(), SparseRegime::QuadraticTheta);
        assert_eq!(classify(5, 12).unwrap(), SparseRegime::LinearTheta);
        assert_eq!(classify(5, 15).unwrap(), SparseRegime::Subquadratic);
        assert_eq!(classify(5, 5).unwrap(), SparseRegime::Zero);
        assert_eq!(classify(5, 10).unwrap(), SparseRegime::One);
        assert!(classify(5, 24).is_err());
        assert!(classify(1, 0).is_err());
    }

    #[test]
    fn values() {
        assert_eq!(sparse_value(6, 4, 8, u64::MAX).unwrap(), SparseValue::Exact(BigUint::from(16u32)));
        assert_eq!(sparse_value(5, 4, 9, u64::MAX).unwrap(), SparseValue::Exact(BigUint::from(32u32)));
        for n in 5..12 {
            assert_eq!(sparse_value(n, 5, 10, 0).unwrap(), SparseValue::Exact(BigUint::one()));
        }
        assert_eq!(sparse_value(6, 4, 7, 0).unwrap(), SparseValue::Exact(BigUint::from(2u32)));
        assert!(sparse_value(3, 4, 7, 0).is_err());
    }

    #[test]
    fn witnesses_are_members_and_reach_the_stated_value() {
        for s in 2..=6usize {
            for q in 0..=2 * binom(s as u64, 2) {
                for n in s..=9 {
                    let g = sparse_witness(n, s, q, u64::MAX).unwrap();
                    assert!(g.is_sq_graph(s, q), "n={n} s={s} q={q}");
                    let v = sparse_value(n, s, q, u64::MAX).unwrap();
                    assert_eq!(&g.total_product(), v.lower(), "n={n} s={s} q={q}");
                }
            }
        }
    }

    #[test]
    fn quadratic_witness_is_doubled_bipartite() {
        let g = sparse_witness(6, 4, 10, 0).unwrap();
        assert_eq!(g.total_product(), BigUint::from(512u32));
        let p = sparse_witness(6, 4, 7, 0).unwrap();
        assert_eq!(p.weights().iter().filter(|&&m| m == 2).count(), 1);
    }

    #[test]
    fn h6_membership_and_size() {
        for n in [6, 12, 18] {
            assert!(h6(n).unwrap().is_sq_graph(5, 24));
        }
        let g = h6(6).unwrap();
        assert_eq!(g.total_product(), BigUint::from(3u32.pow(6) * 2u32.pow(9)));
        assert!(h6(5).is_err());
    }
}
