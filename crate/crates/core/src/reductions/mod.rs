//! Executable versions of the degree-removal arguments: each reduction either
//! certifies that a multigraph has no heavy substructure or returns a vertex
//! whose product-degree is provably small, together with the exact bound.

mod auxiliary;
mod heavy;
mod peel;
mod step_down;
mod symmetrize;

pub use auxiliary::{acyclic_transform, auxiliary_graph, cycle_reduce, t21_parts, AcyclicResult, AuxiliaryGraph};
pub use heavy::{
    heavy_edge_reduce, heavy_kset_reduce, heavy_triangle_reduce, kset_bound, kset_lemma_holds,
    kset_threshold, heavy_set_lemma_holds, KsetThreshold,
};
pub use peel::{mt_pipeline, peel, ChainStep, MtEnd, MtOutcome, PeelEvent, PeelResult, StopReason};
pub use step_down::{step_down_bound, step_down_cross_cap, step_down_reduce, StepDown};
pub use symmetrize::{
    clique_classes, default_step_cap, in_light_classes, symmetrize, symmetrize_capped, SymmetrizeResult, SymmetrizeStep,
};

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bigprod::RootBound;
use crate::multigraph::Multigraph;

/// A vertex together with an exact upper bound on its product-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeWitness {
    pub vertex: usize,
    pub product_degree: BigUint,
    pub bound: RootBound,
    /// The heavy substructure the vertex was taken from.
    pub source: Vec<usize>,
}

impl LowDegreeWitness {
    /// Whether the product-degree respects the bound (exact comparison).
    pub fn holds(&self) -> bool {
        self.bound.admits(&self.product_degree)
    }
}

/// Outcome of a heavy-substructure reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Heavy {
    /// No substructure exceeds its light cap.
    AllLight,
    Witness(LowDegreeWitness),
}

impl Heavy {
    pub fn witness(self) -> Option<LowDegreeWitness> {
        match self {
            Heavy::AllLight => None,
            Heavy::Witness(w) => Some(w),
        }
    }
}

/// The vertex of `set` with the least product-degree (lowest index on ties).
pub fn min_product_degree_in(g: &Multigraph, set: &[usize]) -> (usize, BigUint) {
    let mut best: Option<(usize, BigUint)> = None;
    for &v in set {
        let p = g.product_degree(v).expect("vertex in range");
        if best.as_ref().is_none_or(|(bv, bp)| p < *bp || (p == *bp && v < *bv)) {
            best = Some((v, p));
        }
    }
    best.expect("nonempty set")
}

/// The vertex of least product-degree in the whole multigraph.
pub fn min_product_degree_vertex(g: &Multigraph) -> (usize, BigUint) {
    let all: Vec<usize> = (0..g.n()).collect();
    min_product_degree_in(g, &all)
}

fn witness_from(g: &Multigraph, source: Vec<usize>, bound: RootBound) -> LowDegreeWitness {
    let (vertex, product_degree) = min_product_degree_in(g, &source);
    LowDegreeWitness { vertex, product_degree, bound, source }
}
