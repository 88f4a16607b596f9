//! Heavy edges, triangles and k-sets: a set U spanning more than its light
//! cap forces every outside vertex to send few edges into U, so the
//! product-degrees inside U multiply to something small and the smallest of
//! them is below the k-th root of that product.

use crate::bigprod::{max_product_factored, PowerProduct, RootBound};
use crate::error::{invalid, precondition, Result};
use crate::multigraph::Multigraph;
use crate::turan::{sigma, TuranSpec};
use crate::binom;

use super::{witness_from, Heavy};

/// Lower limit on the vertex count for the heavy k-set lemmas, whose proofs
/// only hold for large enough multigraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsetThreshold {
    /// Accept multigraphs with at least this many vertices.
    MinVertices(usize),
    /// Accept whenever the lemma's closing inequality holds at this size,
    /// checked exactly by [`kset_lemma_holds`].
    Evaluated,
}

impl Default for KsetThreshold {
    fn default() -> Self {
        KsetThreshold::MinVertices(21)
    }
}

/// Whether a heavy-set argument is sound on `n_total` vertices: for every
/// possible heavy edge sum e of a k-set U inside an (k+1, q_out)-graph,
/// the integral AM-GM bound P(U)^2 * (cross product)^(N-k) on the product of
/// the product-degrees in U is at most bound^k.
pub fn heavy_set_lemma_holds(k: usize, q_out: u64, light: u64, n_total: usize, bound: &RootBound) -> bool {
    if n_total < k {
        return true;
    }
    let pairs = binom(k as u64, 2);
    let mut target = bound.clone();
    for f in target.factors.iter_mut() {
        f.1 *= k as i64;
    }
    (light + 1..=q_out).all(|e| {
        let mut prod = max_product_factored(pairs, e).powi(2);
        prod.mul(&max_product_factored(k as u64, q_out - e).powi((n_total - k) as u64));
        target.admits(&prod.to_biguint())
    })
}

/// (a+1)^2 a^(N-3).
fn triangle_bound(a: u64, n_total: usize) -> RootBound {
    RootBound::exact(&PowerProduct::from_factors([(a + 1, 2), (a, n_total as u64 - 3)]))
}

/// (a+2) a^(N-2).
fn edge_bound(a: u64, n_total: usize) -> RootBound {
    RootBound::exact(&PowerProduct::from_factors([(a + 2, 1), (a, n_total as u64 - 2)]))
}

/// The k-set bound (a+1)^((n+3k-7)/k) a^(((k-1)n-3k+7)/k) with n = N-1.
pub fn kset_bound(a: u64, k: usize, n_total: usize) -> RootBound {
    let n = n_total as u64 - 1;
    let c = 3 * k as u64 - 7;
    let p = PowerProduct::from_factors([(a + 1, n + c), (a, (k as u64 - 1) * n - c)]);
    RootBound::root_of(&p, k as u32)
}

fn sigma21(a: u32, s: usize) -> Result<u64> {
    Ok(sigma(TuranSpec::new(2, 1, a)?, s))
}

/// Whether the heavy k-set argument closes on `n_total` vertices.
pub fn kset_lemma_holds(a: u32, k: usize, n_total: usize) -> Result<bool> {
    check_k(k)?;
    let (q_out, light) = (sigma21(a, k + 1)?, sigma21(a, k)?);
    Ok(heavy_set_lemma_holds(k, q_out, light, n_total, &kset_bound(a as u64, k, n_total)))
}

/// The least N <= max_total from which the k-set argument closes for every
/// size up to max_total, if any.
pub fn kset_threshold(a: u32, k: usize, max_total: usize) -> Result<Option<usize>> {
    let mut first = None;
    for n_total in (k + 1..=max_total).rev() {
        if kset_lemma_holds(a, k, n_total)? {
            first = Some(n_total);
        } else {
            break;
        }
    }
    Ok(first)
}

fn check_k(k: usize) -> Result<()> {
    if !(4..=6).contains(&k) {
        return Err(invalid!("heavy k-set reduction needs k in 4..=6 (got {k})"));
    }
    Ok(())
}

fn reduce(g: &Multigraph, k: usize, q_out: u64, light: u64, bound: RootBound) -> Result<Heavy> {
    if let Some((set, _)) = g.violating_set(k + 1, q_out) {
        return Err(precondition!("not a ({}, {q_out})-graph: {set:?} is too heavy", k + 1));
    }
    Ok(match g.violating_set(k, light) {
        None => Heavy::AllLight,
        Some((set, _)) => Heavy::Witness(witness_from(g, set, bound)),
    })
}

/// For G in F(N, 4, 6a+3) with N >= 7: either every triangle spans at most
/// 3a+2, or some vertex has product-degree at most (a+1)^2 a^(N-3).
pub fn heavy_triangle_reduce(g: &Multigraph, a: u32) -> Result<Heavy> {
    if a < 1 {
        return Err(invalid!("a must be positive"));
    }
    if g.n() < 7 {
        return Err(precondition!("heavy triangle reduction needs N >= 7 (got {})", g.n()));
    }
    let a64 = a as u64;
    reduce(g, 3, 6 * a64 + 3, 3 * a64 + 2, triangle_bound(a64, g.n()))
}

/// For G in F(N, 3, 3a+2) with N >= 7: either every pair has multiplicity at
/// most a+1, or some vertex has product-degree at most (a+2) a^(N-2).
pub fn heavy_edge_reduce(g: &Multigraph, a: u32) -> Result<Heavy> {
    if a < 1 {
        return Err(invalid!("a must be positive"));
    }
    if g.n() < 7 {
        return Err(precondition!("heavy edge reduction needs N >= 7 (got {})", g.n()));
    }
    let a64 = a as u64;
    reduce(g, 2, 3 * a64 + 2, a64 + 1, edge_bound(a64, g.n()))
}

/// For G in F(N, k+1, Σ_{2,1}(a,k+1)), k in 4..=6: either every k-set spans
/// at most Σ_{2,1}(a,k), or some vertex meets [`kset_bound`].
pub fn heavy_kset_reduce(g: &Multigraph, a: u32, k: usize, threshold: KsetThreshold) -> Result<Heavy> {
    check_k(k)?;
    let n_total = g.n();
    let ok = match threshold {
        KsetThreshold::MinVertices(m) => n_total >= m,
        KsetThreshold::Evaluated => n_total > k && kset_lemma_holds(a, k, n_total)?,
    };
    if !ok {
        return Err(precondition!("heavy {k}-set reduction is not established for N = {n_total}"));
    }
    let (q_out, light) = (sigma21(a, k + 1)?, sigma21(a, k)?);
    reduce(g, k, q_out, light, kset_bound(a as u64, k, n_total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::LowDegreeWitness;
    use crate::turan::x_star;
    use crate::BigUint;

    fn planted(n: usize, a: u32, extra: &[(usize, usize, u32)]) -> Multigraph {
        let mut g = Multigraph::constant(n, a);
        for &(u, v, m) in extra {
            g.set(u, v, m);
        }
        g
    }

    fn witness(h: Heavy) -> LowDegreeWitness {
        h.witness().expect("witness")
    }

    #[test]
    fn light_cap_values() {
        assert_eq!(sigma21(2, 4).unwrap(), 15);
        assert_eq!(sigma21(2, 5).unwrap(), 25);
        assert_eq!(sigma21(3, 6).unwrap(), 15 * 3 + 7);
        assert_eq!(sigma21(3, 7).unwrap(), 21 * 3 + 9);
    }

    #[test]
    fn constant_graphs_are_light() {
        for a in 2..=4 {
            let g = Multigraph::constant(9, a);
            assert_eq!(heavy_triangle_reduce(&g, a).unwrap(), Heavy::AllLight);
            assert_eq!(heavy_edge_reduce(&g, a).unwrap(), Heavy::AllLight);
            for k in 4..=6 {
                let r = heavy_kset_reduce(&g, a, k, KsetThreshold::MinVertices(7)).unwrap();
                assert_eq!(r, Heavy::AllLight);
            }
        }
    }

    #[test]
    fn planted_heavy_triangle() {
        // triangle {0,1,2} at 3a+3
        let a = 2;
        let g = planted(7, a, &[(0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 3, 1), (1, 4, 1), (2, 5, 1)]);
        assert!(g.is_sq_graph(4, 15));
        let w = witness(heavy_triangle_reduce(&g, a).unwrap());
        assert!(w.holds());
        assert_eq!(w.bound.render(), "2^4 * 3^2");
        assert!(w.product_degree <= BigUint::from(9u32 * 16));
    }

    #[test]
    fn triangle_bound_at_zero_excess() {
        // (a+1)^2 a^(n-2) with n = N-1
        for a in 2..=5u64 {
            for n_total in 7..=12 {
                let b = triangle_bound(a, n_total);
                let expect = BigUint::from((a + 1) * (a + 1)) * crate::bigprod::pow(a, n_total as u64 - 3);
                assert!(b.admits(&expect));
                assert!(!b.admits(&(expect + 1u32)));
            }
        }
    }

    #[test]
    fn planted_heavy_edge() {
        let a = 3;
        let mut g = Multigraph::constant(8, a);
        g.set(0, 1, a + 2);
        for v in 2..8 {
            g.set(0, v, a - 1);
        }
        assert!(g.is_sq_graph(3, 3 * a as u64 + 2));
        let w = witness(heavy_edge_reduce(&g, a).unwrap());
        assert_eq!(w.vertex, 0);
        assert_eq!(w.source, vec![0, 1]);
        assert!(w.holds());
    }

    #[test]
    fn planted_heavy_four_set() {
        let a = 2;
        let mut g = Multigraph::constant(9, a);
        // 4-set {0,1,2,3} spans 6a+4 = 16
        g.set(0, 1, 3);
        g.set(0, 2, 3);
        g.set(1, 2, 3);
        g.set(0, 3, 3);
        for v in 4..9 {
            g.set(0, v, 1);
        }
        assert!(g.is_sq_graph(5, 25));
        let w = witness(heavy_kset_reduce(&g, a, 4, KsetThreshold::Evaluated).unwrap());
        assert_eq!(w.source, vec![0, 1, 2, 3]);
        assert!(w.holds());
    }

    #[test]
    fn closing_inequalities_for_triangle_and_edge() {
        for a in 1..=8u32 {
            let a64 = a as u64;
            for n_total in 7..=30 {
                assert!(heavy_set_lemma_holds(3, 6 * a64 + 3, 3 * a64 + 2, n_total, &triangle_bound(a64, n_total)));
                assert!(heavy_set_lemma_holds(2, 3 * a64 + 2, a64 + 1, n_total, &edge_bound(a64, n_total)));
            }
        }
    }

    #[test]
    fn kset_closing_inequality_thresholds() {
        // the stated hypotheses: n >= 7 for 4-sets, n >= 12 for 5-sets
        for a in 2..=6 {
            for n_total in 8..=40 {
                assert!(kset_lemma_holds(a, 4, n_total).unwrap(), "a={a} N={n_total}");
            }
            for n_total in 13..=40 {
                assert!(kset_lemma_holds(a, 5, n_total).unwrap(), "a={a} N={n_total}");
            }
            for n_total in 21..=40 {
                assert!(kset_lemma_holds(a, 6, n_total).unwrap(), "a={a} N={n_total}");
            }
        }
        for k in 4..=6 {
            let t = kset_threshold(2, k, 40).unwrap().unwrap();
            assert!(t <= 10, "k={k} threshold {t}");
        }
    }

    #[test]
    fn seven_sets_would_not_close_at_a_two() {
        // 7 x_{2*}(2,1) - 2 < 0
        let x = x_star(2, 2, 1).unwrap();
        assert!(7.0 * x - 2.0 < 0.0);
        assert!(6.0 * x - 1.0 > 0.0);
    }

    #[test]
    fn rejects_out_of_class_and_small_inputs() {
        let g = Multigraph::constant(7, 3);
        assert!(matches!(heavy_triangle_reduce(&g, 2), Err(crate::Error::Precondition(_))));
        assert!(matches!(heavy_edge_reduce(&Multigraph::constant(6, 2), 2), Err(crate::Error::Precondition(_))));
        assert!(matches!(heavy_kset_reduce(&g, 3, 7, KsetThreshold::Evaluated), Err(crate::Error::InvalidParameter(_))));
        assert!(heavy_kset_reduce(&Multigraph::constant(10, 2), 2, 5, KsetThreshold::default()).is_err());
    }
}
