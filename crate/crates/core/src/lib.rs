//! Exact computations for the multigraph product problem: the family F(n,s,q)
//! of n-vertex multigraphs whose s-sets span at most q edges, the maximum
//! product of edge multiplicities over that family, and the constructions and
//! peeling arguments that bound it.
//!
//! The crate is `no_std` (with `alloc`). Parallel search, file formats and the
//! command line live in the companion `mgx` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod bigprod;
pub mod error;
pub mod girth;
pub mod iterated;
pub mod multigraph;
pub mod random;
pub mod real;
pub mod reductions;
pub mod solver;
pub mod sparse;
pub mod subsets;
pub mod turan;

pub use bigprod::{amgm_bound, amgm_bound_fixed_factor, max_product_with_sum, PowerProduct, RootBound};
pub use error::Error;
pub use multigraph::Multigraph;
pub use num_bigint::BigUint;

/// Multiplicity of a single vertex pair.
pub type Mult = u32;

/// Binomial coefficient C(n, k) as `u64`; zero when k > n.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
