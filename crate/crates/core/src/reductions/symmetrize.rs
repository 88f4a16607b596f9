//! Rewriting a multigraph from ∩_{2<=t<=4} F(N, t, C(t,2)a + t - 1) into
//! clique classes: every class spans multiplicity a-1 internally and any two
//! classes are joined by a constant multiplicity a or a+1.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{invalid, precondition, Error, Result};
use crate::multigraph::Multigraph;
use crate::{binom, Mult};

/// One row copy: the row of `source` overwrites the row of `overwritten`
/// and the pair between them is set to a-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizeStep {
    pub overwritten: usize,
    pub source: usize,
    pub old_weight: Mult,
    pub p_overwritten: BigUint,
    pub p_source: BigUint,
    pub product_before: BigUint,
    pub product_after: BigUint,
}

impl SymmetrizeStep {
    /// P_{i+1} * w(v1 v2) * p(v1) = P_i * (a-1) * p(v2).
    pub fn identity_holds(&self, a: u32) -> bool {
        &self.product_after * self.old_weight * &self.p_overwritten
            == &self.product_before * (a - 1) * &self.p_source
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizeResult {
    pub graph: Multigraph,
    pub steps: Vec<SymmetrizeStep>,
    pub classes: Vec<Vec<usize>>,
}

/// Whether G lies in ∩_{2<=t<=4} F(N, t, C(t,2)a + t - 1).
pub fn in_light_classes(g: &Multigraph, a: u32) -> bool {
    (2..=4u64).all(|t| g.is_sq_graph(t as usize, binom(t, 2) * a as u64 + t - 1))
}

/// The clique classes of G when G has the class structure, lowest vertex
/// first within and across classes.
pub fn clique_classes(g: &Multigraph, a: u32) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if label[u] != usize::MAX {
            continue;
        }
        let mut class = vec![u];
        class.extend((u + 1..n).filter(|&v| label[v] == usize::MAX && g.get(u, v) == a - 1));
        for &v in &class {
            label[v] = classes.len();
        }
        classes.push(class);
    }
    let mut between = vec![vec![None; classes.len()]; classes.len()];
    for u in 0..n {
        for v in u + 1..n {
            let (x, y, w) = (label[u], label[v], g.get(u, v));
            if x == y {
                if w != a - 1 {
                    return None;
                }
            } else if w != a && w != a + 1 {
                return None;
            } else {
                let slot: &mut Option<Mult> = &mut between[x][y];
                match slot {
                    None => *slot = Some(w),
                    Some(prev) if *prev != w => return None,
                    _ => {}
                }
            }
        }
    }
    Some(classes)
}

fn offending_pair(g: &Multigraph, a: u32) -> Option<(usize, usize)> {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            let w = g.get(u, v);
            if w < a - 1 {
                return Some((u, v));
            }
            if w == a - 1 && (0..n).any(|x| x != u && x != v && g.get(u, x) != g.get(v, x)) {
                return Some((u, v));
            }
        }
    }
    None
}

/// Default cap on row copies: generous compared with the C(N,2) steps the
/// argument needs.
pub fn default_step_cap(n: usize) -> usize {
    4 * binom(n as u64, 2) as usize + 4
}

/// Repeatedly copy the row of the endpoint with larger product-degree onto
/// the other endpoint of an offending pair (multiplicity below a-1, or equal
/// to a-1 with different rows). On ties the lower-index row is copied.
/// Fails with `BudgetExceeded` after `max_steps` copies.
pub fn symmetrize_capped(g: &Multigraph, a: u32, max_steps: usize) -> Result<SymmetrizeResult> {
    if a < 2 {
        return Err(invalid!("symmetrize needs a >= 2 (got {a})"));
    }
    if !in_light_classes(g, a) {
        return Err(precondition!("multigraph is not in the light classes for a = {a}"));
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while let Some((u, v)) = offending_pair(&cur, a) {
        if steps.len() == max_steps {
            return Err(Error::BudgetExceeded(max_steps as u64));
        }
        let (pu, pv) = (cur.product_degree(u)?, cur.product_degree(v)?);
        let (v1, v2, p1, p2) = if pv < pu { (v, u, pv, pu) } else { (u, v, pu, pv) };
        let (v1, v2, p1, p2) = if p1 == p2 { (u.max(v), u.min(v), p1, p2) } else { (v1, v2, p1, p2) };
        let before = cur.total_product();
        let old_weight = cur.get(v1, v2);
        for x in 0..cur.n() {
            if x != v1 && x != v2 {
                let w = cur.get(v2, x);
                cur.set(v1, x, w);
            }
        }
        cur.set(v1, v2, a - 1);
        steps.push(SymmetrizeStep {
            overwritten: v1,
            source: v2,
            old_weight,
            p_overwritten: p1,
            p_source: p2,
            product_before: before,
            product_after: cur.total_product(),
        });
    }
    let classes = clique_classes(&cur, a).expect("no offending pair implies class structure");
    Ok(SymmetrizeResult { graph: cur, steps, classes })
}

/// [`symmetrize_capped`] with [`default_step_cap`].
pub fn symmetrize(g: &Multigraph, a: u32) -> Result<SymmetrizeResult> {
    symmetrize_capped(g, a, default_step_cap(g.n()))
}
