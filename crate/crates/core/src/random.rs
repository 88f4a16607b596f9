//! Random members of F(n,s,q) classes and random clique-class multigraphs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::multigraph::Multigraph;
use crate::Mult;

/// Uniform multiplicities in `lo..=hi`, then repaired: while some s-set
/// spans more than q for some (s, q) in `classes`, a random positive pair of
/// that set is decremented.
pub fn random_member_of<R: Rng + ?Sized>(n: usize, classes: &[(usize, u64)], lo: Mult, hi: Mult, rng: &mut R) -> Multigraph {
    let mut g = Multigraph::from_fn(n, |_, _| rng.gen_range(lo..=hi));
    repair(&mut g, classes, rng);
    g
}

/// [`random_member_of`] for a single class.
pub fn random_member<R: Rng + ?Sized>(n: usize, s: usize, q: u64, lo: Mult, hi: Mult, rng: &mut R) -> Multigraph {
    random_member_of(n, &[(s, q)], lo, hi, rng)
}

/// Decrement random pairs of violating sets until every class holds.
pub fn repair<R: Rng + ?Sized>(g: &mut Multigraph, classes: &[(usize, u64)], rng: &mut R) {
    loop {
        let hit = classes.iter().find_map(|&(s, q)| g.violating_set(s, q));
        let Some((set, excess)) = hit else { return };
        for _ in 0..excess {
            let mut pairs = Vec::new();
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    if g.get(u, v) > 0 {
                        pairs.push((u, v));
                    }
                }
            }
            let &(u, v) = pairs.choose(rng).expect("violating set has a positive pair");
            g.set(u, v, g.get(u, v) - 1);
        }
    }
}

/// A random simple graph on `m` vertices with no cycle shorter than 5; a
/// forest when `forest` is set, and containing a 5-cycle when `cycle` is set
/// and m >= 5.
pub fn random_girth5_graph<R: Rng + ?Sized>(m: usize, forest: bool, cycle: bool, rng: &mut R) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; m]; m];
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    if cycle && !forest && m >= 5 {
        for i in 0..5 {
            let (u, v) = (order[i], order[(i + 1) % 5]);
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if adj[u][v] || !rng.gen_bool(0.5) {
            continue;
        }
        let d = distance(&adj, u, v);
        let ok = match d {
            None => true,
            Some(d) => !forest && d >= 4,
        };
        if ok {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    adj
}

fn distance(adj: &[Vec<bool>], from: usize, to: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    dist[from] = 0;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return Some(dist[u]);
        }
        for (v, &e) in adj[u].iter().enumerate() {
            if e && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    None
}

/// A random multigraph with clique-class structure: n vertices split into
/// `m` random nonempty classes (multiplicity a-1 inside), joined by a+1 along
/// the edges of a random girth-5 graph on the classes and by a elsewhere.
pub fn random_class_structure<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    a: Mult,
    forest: bool,
    cycle: bool,
    rng: &mut R,
) -> Multigraph {
    assert!(1 <= m && m <= n, "need 1 <= m <= n");
    let mut label: Vec<usize> = (0..n).map(|i| if i < m { i } else { rng.gen_range(0..m) }).collect();
    label.shuffle(rng);
    let h = random_girth5_graph(m, forest, cycle, rng);
    Multigraph::from_fn(n, |u, v| {
        let (x, y) = (label[u], label[v]);
        if x == y {
            a - 1
        } else if h[x][y] {
            a + 1
        } else {
            a
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn members_satisfy_every_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let classes = [(2, 4), (3, 11), (4, 21)];
            let g = random_member_of(7, &classes, 1, 6, &mut rng);
            assert!(classes.iter().all(|&(s, q)| g.is_sq_graph(s, q)));
        }
    }

    #[test]
    fn girth_five_structures_are_light() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..300 {
            let a = 2 + trial % 3;
            let n = 5 + (trial as usize) % 6;
            let m = 1 + (trial as usize * 7) % n;
            let g = random_class_structure(n, m, a, trial % 2 == 0, true, &mut rng);
            for t in 2..=4u64 {
                assert!(g.is_sq_graph(t as usize, binom(t, 2) * a as u64 + t - 1));
            }
        }
    }

    #[test]
    fn forests_have_no_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..12 {
            let h = random_girth5_graph(m, true, true, &mut rng);
            let edges: usize = h.iter().map(|r| r.iter().filter(|&&e| e).count()).sum::<usize>() / 2;
            assert!(edges < m);
        }
        let h = random_girth5_graph(6, false, true, &mut rng);
        assert!(h.iter().map(|r| r.iter().filter(|&&e| e).count()).sum::<usize>() >= 10);
    }
}
