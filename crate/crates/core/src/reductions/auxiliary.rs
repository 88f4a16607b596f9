//! The auxiliary graph H of a multigraph with clique-class structure: one
//! vertex per class, weighted by class size, with an edge wherever the two
//! classes are joined by multiplicity a+1.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bigprod::{PowerProduct, RootBound};
use crate::error::{precondition, Result};
use crate::multigraph::Multigraph;

use super::symmetrize::{clique_classes, in_light_classes};
use super::{witness_from, LowDegreeWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    /// The classes X_i, each sorted, ordered by least vertex.
    pub classes: Vec<Vec<usize>>,
    pub adj: Vec<Vec<bool>>,
}

impl AuxiliaryGraph {
    pub fn m(&self) -> usize {
        self.classes.len()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn weights(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.m();
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| self.adj[i][j]).collect()
    }

    fn bfs(&self, from: usize, skip: Option<(usize, usize)>) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.m()];
        let mut seen = vec![false; self.m()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for v in 0..self.m() {
                let skipped = skip.is_some_and(|(x, y)| (u, v) == (x, y) || (u, v) == (y, x));
                if self.adj[u][v] && !seen[v] && !skipped {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// A shortest cycle as a vertex sequence, or None for a forest.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for (u, v) in self.edges() {
            let parent = self.bfs(u, Some((u, v)));
            if parent[v].is_none() {
                continue;
            }
            let mut path = vec![v];
            let mut x = v;
            while let Some(p) = parent[x] {
                path.push(p);
                x = p;
            }
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
        best
    }

    pub fn girth(&self) -> Option<usize> {
        self.shortest_cycle().map(|c| c.len())
    }

    pub fn is_forest(&self) -> bool {
        self.shortest_cycle().is_none()
    }
}

/// H for a multigraph with clique-class structure.
pub fn auxiliary_graph(g: &Multigraph, a: u32) -> Result<AuxiliaryGraph> {
    let classes = clique_classes(g, a).ok_or_else(|| precondition!("multigraph lacks clique-class structure"))?;
    let m = classes.len();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let e = g.get(classes[i][0], classes[j][0]) == a + 1;
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }
    Ok(AuxiliaryGraph { classes, adj })
}

fn from_classes(n: usize, classes: &[Vec<usize>], a: u32, joined: impl Fn(usize, usize) -> bool) -> Multigraph {
    let mut label = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            label[v] = i;
        }
    }
    Multigraph::from_fn(n, |u, v| {
        let (x, y) = (label[u], label[v]);
        if x == y {
            a - 1
        } else if joined(x, y) {
            a + 1
        } else {
            a
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicResult {
    pub aux: AuxiliaryGraph,
    /// Index of the heaviest class, which becomes V_0.
    pub v0: usize,
    /// The out-neighbour of each class after orienting every tree towards
    /// its heaviest class.
    pub out: Vec<Option<usize>>,
    /// Every oriented edge moved onto the heaviest class.
    pub rewired: Multigraph,
    /// The member of T_{2,1}(a,n) with V_0 the heaviest class.
    pub graph: Multigraph,
    /// P of the input, of `rewired` and of `graph`.
    pub products: [BigUint; 3],
}

/// For a clique-class multigraph whose H is a forest: orient each tree
/// towards its heaviest class, move every oriented edge u->v onto u-v0
/// (v0 the heaviest class overall), then raise V_0-cross pairs to a+1 and
/// all other cross pairs to a. Ties go to the lowest class index.
pub fn acyclic_transform(g: &Multigraph, a: u32) -> Result<AcyclicResult> {
    let aux = auxiliary_graph(g, a)?;
    if !aux.is_forest() {
        return Err(precondition!("auxiliary graph has a cycle"));
    }
    let m = aux.m();
    let heaviest = |it: &mut dyn Iterator<Item = usize>| {
        it.fold(None, |best: Option<usize>, i| match best {
            Some(b) if aux.weight(b) >= aux.weight(i) => Some(b),
            _ => Some(i),
        })
    };
    let v0 = heaviest(&mut (0..m)).expect("at least one class");
    let mut out = vec![None; m];
    let mut done = vec![false; m];
    for start in 0..m {
        if done[start] {
            continue;
        }
        let parent = aux.bfs(start, None);
        let comp: Vec<usize> = (0..m).filter(|&i| i == start || parent[i].is_some()).collect();
        let root = heaviest(&mut comp.iter().copied()).expect("nonempty component");
        let toward = aux.bfs(root, None);
        for &i in &comp {
            done[i] = true;
            out[i] = toward[i];
        }
    }
    let n = g.n();
    let rewired = from_classes(n, &aux.classes, a, |x, y| {
        (x == v0 && out[y].is_some()) || (y == v0 && out[x].is_some())
    });
    let mut in_v0 = vec![false; n];
    for &v in &aux.classes[v0] {
        in_v0[v] = true;
    }
    let graph = Multigraph::from_fn(n, |u, v| match (in_v0[u], in_v0[v]) {
        (true, true) => a - 1,
        (false, false) => a,
        _ => a + 1,
    });
    let products = [g.total_product(), rewired.total_product(), graph.total_product()];
    Ok(AcyclicResult { aux, v0, out, rewired, graph, products })
}

/// V_0 when G is T_{2,1}(a,n) for some split (a-1 inside V_0, a+1 across,
/// a inside V_1).
pub fn t21_parts(g: &Multigraph, a: u32) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let with_zero: Vec<usize> = (0..n).filter(|&v| v == 0 || g.get(0, v) == a - 1).collect();
    let without_zero: Vec<usize> = (1..n).filter(|&v| g.get(0, v) == a + 1).collect();
    [with_zero, without_zero].into_iter().find(|v0| {
        let mut inside = vec![false; n];
        for &v in v0 {
            inside[v] = true;
        }
        (0..n).all(|u| {
            (u + 1..n).all(|v| {
                let want = match (inside[u], inside[v]) {
                    (true, true) => a - 1,
                    (false, false) => a,
                    _ => a + 1,
                };
                g.get(u, v) == want
            })
        })
    })
}

/// For a clique-class multigraph in the light classes whose H has a cycle:
/// the least product-degree among one representative per class of a
/// shortest cycle is at most (a^(4n-6) (a+1)^(n+6))^(1/5), n = N-1.
pub fn cycle_reduce(g: &Multigraph, a: u32) -> Result<LowDegreeWitness> {
    if !in_light_classes(g, a) {
        return Err(precondition!("multigraph is not in the light classes for a = {a}"));
    }
    let aux = auxiliary_graph(g, a)?;
    let cycle = aux.shortest_cycle().ok_or_else(|| precondition!("auxiliary graph is a forest"))?;
    assert!(cycle.len() >= 5, "light classes force girth at least 5");
    let n = g.n() as u64 - 1;
    let bound = RootBound::root_of(&PowerProduct::from_factors([(a as u64, 4 * n - 6), (a as u64 + 1, n + 6)]), 5);
    let reps: Vec<usize> = cycle.iter().map(|&i| aux.classes[i][0]).collect();
    Ok(witness_from(g, reps, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_class_structure;
    use crate::turan::{build_turan, pi_max, Partition, TuranSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn turan_graph_gives_a_star() {
        let a = 3;
        let g = build_turan(TuranSpec::new(2, 1, a).unwrap(), &Partition::new(vec![3, 4])).unwrap();
        let h = auxiliary_graph(&g, a).unwrap();
        // V_1 vertices are singleton classes joined by a, so H is a star
        assert_eq!(h.m(), 5);
        assert_eq!(h.edges().len(), 4);
        assert!(h.is_forest());
        assert_eq!(t21_parts(&g, a), Some(vec![0, 1, 2]));
        let r = acyclic_transform(&g, a).unwrap();
        assert_eq!(r.graph, g);
        let two = build_turan(TuranSpec::new(2, 1, 2).unwrap(), &Partition::new(vec![2, 1])).unwrap();
        let h2 = auxiliary_graph(&two, 2).unwrap();
        assert_eq!(h2.weights(), vec![2, 1]);
        assert_eq!(h2.edges(), vec![(0, 1)]);
    }

    #[test]
    fn five_cycle_of_singletons() {
        let a = 2;
        let g = Multigraph::from_fn(5, |u, v| if (v - u) % 5 == 1 || (v - u) % 5 == 4 { a + 1 } else { a });
        let h = auxiliary_graph(&g, a).unwrap();
        assert_eq!(h.m(), 5);
        assert_eq!(h.girth(), Some(5));
        assert!(acyclic_transform(&g, a).is_err());
        let w = cycle_reduce(&g, a).unwrap();
        assert!(w.holds());
        assert_eq!(w.source.len(), 5);
    }

    #[test]
    fn cycle_average_decreases_with_length() {
        // p_t = log(a^(n-1)(a+1)) + (n+1)/t log((a+1)/a)
        let (a, n) = (2.0f64, 20.0f64);
        let p = |t: f64| (n - 1.0) * a.ln() + (a + 1.0).ln() + (n + 1.0) / t * ((a + 1.0) / a).ln();
        for t in 5..30 {
            assert!(p(t as f64 + 1.0) < p(t as f64));
        }
    }

    #[test]
    fn path_structure_transforms_into_t21() {
        // classes of sizes 1, 3, 2 along a path; H = path
        let a = 2;
        let classes = vec![vec![0], vec![1, 2, 3], vec![4, 5]];
        let g = from_classes(6, &classes, a, |x, y| x.abs_diff(y) == 1);
        let r = acyclic_transform(&g, a).unwrap();
        assert_eq!(r.v0, 1);
        assert_eq!(t21_parts(&r.graph, a), Some(vec![1, 2, 3]));
        assert!(r.products[0] <= r.products[1] && r.products[1] <= r.products[2]);
    }

    #[test]
    fn random_forests_transform_monotonically() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..400 {
            let a = 2 + (trial % 3) as u32;
            let n = 2 + trial % 9;
            let m = 1 + (trial * 5) % n;
            let g = random_class_structure(n, m, a, true, false, &mut rng);
            let r = acyclic_transform(&g, a).unwrap();
            assert!(r.products[0] <= r.products[1], "stage 2, trial {trial}");
            assert!(r.products[1] <= r.products[2], "stage 3, trial {trial}");
            assert!(t21_parts(&r.graph, a).is_some());
            assert!(r.graph.is_sq_graph(4, 6 * a as u64 + 3));
            assert!(r.products[2] <= pi_max(TuranSpec::new(2, 1, a).unwrap(), n).0);
        }
    }

    #[test]
    fn random_cycles_give_sound_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for trial in 0..400 {
            let a = 2 + (trial % 3) as u32;
            let n = 5 + trial % 6;
            let m = 5 + (trial * 3) % (n - 4);
            let g = random_class_structure(n, m, a, false, true, &mut rng);
            let h = auxiliary_graph(&g, a).unwrap();
            assert!(h.girth().unwrap() >= 5);
            assert!(cycle_reduce(&g, a).unwrap().holds(), "trial {trial}");
        }
    }

    #[test]
    fn non_t21_is_rejected() {
        let mut g = Multigraph::constant(4, 2);
        g.set(0, 1, 3);
        assert_eq!(t21_parts(&g, 2), None);
        assert_eq!(t21_parts(&Multigraph::constant(4, 2), 2), Some(vec![]));
    }
}
