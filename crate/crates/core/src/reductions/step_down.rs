//! The step-down argument: inside F(N, s+1, Σ_{r,d}(a,s+1)), an s-set above
//! Σ_{r,d}(a,s) caps what every other vertex sends into it.

use crate::bigprod::{max_product_factored, RootBound};
use crate::error::{invalid, precondition, Result};
use crate::multigraph::Multigraph;
use crate::turan::{sigma, TuranSpec};
use crate::binom;

use super::{witness_from, LowDegreeWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepDown {
    /// G lies in F(N, s, Σ_{r,d}(a,s)).
    InLowerClass,
    Witness(LowDegreeWitness),
}

fn check(spec: TuranSpec, s: usize) -> Result<()> {
    let top = (spec.r - 1) * (spec.d as usize + 1) + 1;
    if s < 2 || s > top {
        return Err(invalid!("step down needs 2 <= s <= (r-1)(d+1)+1 = {top} (got s={s})"));
    }
    Ok(())
}

/// Σ_{r,d}(a,s+1) - Σ_{r,d}(a,s) - 1: the most any outside vertex can send
/// into a heavy s-set.
pub fn step_down_cross_cap(spec: TuranSpec, s: usize) -> Result<u64> {
    check(spec, s)?;
    Ok(sigma(spec, s + 1) - sigma(spec, s) - 1)
}

/// The explicit bound on the returned vertex:
/// p(u0)^s <= maxprod(C(s,2), Σ(s+1))^2 * maxprod(s, cap)^(N-s).
pub fn step_down_bound(spec: TuranSpec, s: usize, n_total: usize) -> Result<RootBound> {
    let cap = step_down_cross_cap(spec, s)?;
    let mut p = max_product_factored(binom(s as u64, 2), sigma(spec, s + 1)).powi(2);
    p.mul(&max_product_factored(s as u64, cap).powi(n_total.saturating_sub(s) as u64));
    Ok(RootBound::root_of(&p, s as u32))
}

/// For G in F(N, s+1, Σ_{r,d}(a,s+1)) with 2 <= s <= (r-1)(d+1)+1: either G
/// lies in F(N, s, Σ_{r,d}(a,s)) or the least product-degree vertex of the
/// first heavy s-set meets [`step_down_bound`].
pub fn step_down_reduce(g: &Multigraph, spec: TuranSpec, s: usize) -> Result<StepDown> {
    check(spec, s)?;
    let (q_hi, q_lo) = (sigma(spec, s + 1), sigma(spec, s));
    if let Some((set, _)) = g.violating_set(s + 1, q_hi) {
        return Err(precondition!("not a ({}, {q_hi})-graph: {set:?} is too heavy", s + 1));
    }
    Ok(match g.violating_set(s, q_lo) {
        None => StepDown::InLowerClass,
        Some((set, _)) => StepDown::Witness(witness_from(g, set, step_down_bound(spec, s, g.n())?)),
    })
}
