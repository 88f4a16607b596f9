//! Sequential vertex removal. Since P(G) = P(G - v) p(v), a log of removed
//! vertices and their product-degrees telescopes into a bound on P(G).

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{invalid, precondition, Result};
use crate::multigraph::Multigraph;

use super::auxiliary::{acyclic_transform, auxiliary_graph, cycle_reduce, AcyclicResult};
use super::heavy::{heavy_edge_reduce, heavy_triangle_reduce};
use super::symmetrize::symmetrize;
use super::{Heavy, LowDegreeWitness};

/// What a reduction chain asks the driver to do next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainStep {
    Remove { kind: &'static str, witness: LowDegreeWitness },
    /// Continue with a different multigraph on the same vertices whose
    /// product is at least as large.
    Replace { kind: &'static str, graph: Multigraph },
    Done,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeelEvent {
    Removal {
        kind: &'static str,
        /// Label of the vertex in the input multigraph.
        vertex: usize,
        n_before: usize,
        /// The witness in the labels of the multigraph it came from.
        witness: LowDegreeWitness,
    },
    Replacement {
        kind: &'static str,
        n: usize,
        product_before: BigUint,
        product_after: BigUint,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    Predicate,
    ChainDone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    pub graph: Multigraph,
    /// Input label of each remaining vertex.
    pub labels: Vec<usize>,
    pub events: Vec<PeelEvent>,
    pub reason: StopReason,
}

impl PeelResult {
    pub fn removals(&self) -> impl Iterator<Item = (&'static str, usize, &LowDegreeWitness)> {
        self.events.iter().filter_map(|e| match e {
            PeelEvent::Removal { kind, vertex, witness, .. } => Some((*kind, *vertex, witness)),
            _ => None,
        })
    }

    /// Product of the removed product-degrees; P(input) is at most this
    /// times P(graph), with equality when no replacement raised P.
    pub fn removed_product(&self) -> BigUint {
        self.removals().fold(BigUint::one(), |acc, (_, _, w)| acc * &w.product_degree)
    }

    /// Every removed vertex met its bound and no replacement lowered P.
    pub fn is_sound(&self) -> bool {
        self.events.iter().all(|e| match e {
            PeelEvent::Removal { witness, .. } => witness.holds(),
            PeelEvent::Replacement { product_before, product_after, .. } => product_after >= product_before,
        })
    }
}

/// Apply `chain` until `stop` holds or the chain reports `Done`.
pub fn peel(
    g: &Multigraph,
    mut stop: impl FnMut(&Multigraph) -> bool,
    mut chain: impl FnMut(&Multigraph) -> Result<ChainStep>,
) -> Result<PeelResult> {
    let mut cur = g.clone();
    let mut labels: Vec<usize> = (0..g.n()).collect();
    let mut events = Vec::new();
    let reason = loop {
        if stop(&cur) {
            break StopReason::Predicate;
        }
        match chain(&cur)? {
            ChainStep::Done => break StopReason::ChainDone,
            ChainStep::Remove { kind, witness } => {
                let v = witness.vertex;
                events.push(PeelEvent::Removal { kind, vertex: labels[v], n_before: cur.n(), witness });
                cur = cur.remove_vertex(v)?;
                labels.remove(v);
            }
            ChainStep::Replace { kind, graph } => {
                if graph.n() != cur.n() {
                    return Err(invalid!("replacement must keep the vertex count"));
                }
                events.push(PeelEvent::Replacement {
                    kind,
                    n: cur.n(),
                    product_before: cur.total_product(),
                    product_after: graph.total_product(),
                });
                cur = graph;
            }
        }
    };
    Ok(PeelResult { graph: cur, labels, events, reason })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MtEnd {
    /// The size floor was reached.
    Floor,
    /// H became a forest; the transform ends in T_{2,1}(a, n0).
    Acyclic(alloc::boxed::Box<AcyclicResult>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtOutcome {
    pub peel: PeelResult,
    pub end: MtEnd,
}

impl MtOutcome {
    /// The multigraph whose product, times the removed product-degrees,
    /// bounds P of the input.
    pub fn final_graph(&self) -> &Multigraph {
        match &self.end {
            MtEnd::Floor => &self.peel.graph,
            MtEnd::Acyclic(r) => &r.graph,
        }
    }
}

/// The F(N, 4, 6a+3) pipeline: remove low vertices of heavy triangles, then
/// of heavy edges; once both are light, symmetrize into clique classes and
/// either finish through the acyclic transform or remove a low vertex of a
/// shortest cycle of H. Stops when at most `floor` vertices remain.
pub fn mt_pipeline(g: &Multigraph, a: u32, floor: usize) -> Result<MtOutcome> {
    if a < 2 {
        return Err(invalid!("pipeline needs a >= 2 (got {a})"));
    }
    if floor < 6 {
        return Err(invalid!("pipeline floor must be at least 6 (got {floor})"));
    }
    let q = 6 * a as u64 + 3;
    if !g.is_sq_graph(4, q) {
        return Err(precondition!("not a (4, {q})-graph"));
    }
    let peeled = peel(
        g,
        |h| h.n() <= floor,
        |h| {
            if let Heavy::Witness(witness) = heavy_triangle_reduce(h, a)? {
                return Ok(ChainStep::Remove { kind: "heavy-triangle", witness });
            }
            if let Heavy::Witness(witness) = heavy_edge_reduce(h, a)? {
                return Ok(ChainStep::Remove { kind: "heavy-edge", witness });
            }
            let sym = symmetrize(h, a)?;
            if sym.graph != *h {
                return Ok(ChainStep::Replace { kind: "symmetrize", graph: sym.graph });
            }
            if auxiliary_graph(h, a)?.is_forest() {
                return Ok(ChainStep::Done);
            }
            Ok(ChainStep::Remove { kind: "cycle", witness: cycle_reduce(h, a)? })
        },
    )?;
    let end = match peeled.reason {
        StopReason::Predicate => MtEnd::Floor,
        StopReason::ChainDone => MtEnd::Acyclic(alloc::boxed::Box::new(acyclic_transform(&peeled.graph, a)?)),
    };
    Ok(MtOutcome { peel: peeled, end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_member;
    use crate::reductions::min_product_degree_vertex;
    use crate::turan::{pi_max, TuranSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_graph_stops_immediately() {
        let g = Multigraph::constant(8, 2);
        let r = peel(&g, |h| h.is_sq_graph(3, 8), |_| Ok(ChainStep::Done)).unwrap();
        assert!(r.events.is_empty());
        assert_eq!(r.reason, StopReason::Predicate);
    }

    #[test]
    fn removal_log_telescopes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_member(9, 3, 10, 1, 5, &mut rng);
        let r = peel(
            &g,
            |h| h.n() <= 4,
            |h| {
                let (vertex, p) = min_product_degree_vertex(h);
                Ok(ChainStep::Remove {
                    kind: "min-degree",
                    witness: LowDegreeWitness {
                        vertex,
                        product_degree: p,
                        bound: crate::bigprod::RootBound::new(1, alloc::vec![]),
                        source: alloc::vec![vertex],
                    },
                })
            },
        )
        .unwrap();
        assert_eq!(r.graph.n(), 4);
        assert_eq!(r.removed_product() * r.graph.total_product(), g.total_product());
        let mut seen: Vec<usize> = r.removals().map(|(_, v, _)| v).chain(r.labels.iter().copied()).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn pipeline_on_random_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut acyclic = 0;
        for trial in 0..120 {
            let a = 2 + (trial % 3) as u32;
            let n = 7 + trial % 6;
            let g = random_member(n, 4, 6 * a as u64 + 3, a - 1, a + 2, &mut rng);
            let out = mt_pipeline(&g, a, 6).unwrap();
            assert!(out.peel.is_sound(), "trial {trial}");
            let fin = out.final_graph();
            assert!(g.total_product() <= out.peel.removed_product() * fin.total_product());
            if let MtEnd::Acyclic(r) = &out.end {
                acyclic += 1;
                let spec = TuranSpec::new(2, 1, a).unwrap();
                assert!(r.graph.total_product() <= pi_max(spec, r.graph.n()).0);
            }
        }
        assert!(acyclic > 0);
    }
}
