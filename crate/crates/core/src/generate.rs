//! Seeded random instances: Erdős–Rényi graphs, random bipartite graphs,
//! uniform labelled trees from Prüfer sequences, and random semi-proper
//! orientations.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::orientation::{is_semi_proper, Direction, WeightedOrientation};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

/// Each vertex joins side 0 or 1 uniformly; cross pairs are edges with
/// probability `p`.
pub fn random_bipartite(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let side: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

/// Tree encoded by a Prüfer sequence of length `n - 2`.
pub fn tree_from_prufer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph::new(n, edges).expect("Prüfer decoding yields a tree")
}

/// Uniform labelled tree on `n` vertices.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    match n {
        0 | 1 => Graph::empty(n),
        2 => Graph::path(2),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
            tree_from_prufer(&seq)
        }
    }
}

/// All `n^(n-2)` labelled trees on `n >= 2` vertices.
pub fn all_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 2);
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            tree_from_prufer(&seq)
        })
        .collect()
}

/// Random semi-proper orientation with weights in `1..=max_weight`
/// (`max_weight >= 2`).
///
/// Half the time a fully random orientation is tried a few times and kept
/// if it happens to be semi-proper. Otherwise vertices are put in random
/// order, every edge points from the earlier endpoint to the later one,
/// and each vertex in turn picks an in-sum avoiding the (already final)
/// sums of its in-neighbours, spread randomly over its in-edges.
pub fn random_semi_proper(g: &Graph, max_weight: u32, rng: &mut impl Rng) -> WeightedOrientation {
    assert!(max_weight >= 2, "need two weights to dodge every clash");
    if rng.random_bool(0.5) {
        for _ in 0..8 {
            let dirs = (0..g.m()).map(|_| if rng.random_bool(0.5) { Direction::Forward } else { Direction::Reverse }).collect();
            let weights = (0..g.m()).map(|_| rng.random_range(1..=max_weight)).collect();
            let wo = WeightedOrientation::new(dirs, weights).expect("positive weights");
            if is_semi_proper(g, &wo).expect("covers g") {
                return wo;
            }
        }
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut rank = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut wo = WeightedOrientation::uniform(g);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        wo.set(e, if rank[u] < rank[v] { Direction::Forward } else { Direction::Reverse }, 1);
    }
    let mut sums = vec![0u64; g.n()];
    for &v in &order {
        let ins: Vec<(usize, usize)> =
            g.adj(v).iter().copied().filter(|&(u, _)| rank[u] < rank[v]).collect();
        let k = ins.len() as u64;
        let forbidden: Vec<u64> = ins.iter().map(|&(u, _)| sums[u]).collect();
        let choices: Vec<u64> = (k..=k * u64::from(max_weight)).filter(|q| !forbidden.contains(q)).collect();
        let target = *choices.choose(rng).expect("more candidate sums than in-neighbours");
        let mut spare = target - k;
        while spare > 0 {
            let (_, e) = ins[rng.random_range(0..ins.len())];
            if wo.weight(e) < max_weight {
                wo.set_weight(e, wo.weight(e) + 1);
                spare -= 1;
            }
        }
        sums[v] = target;
    }
    wo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_decoding() {
        let t = tree_from_prufer(&[3, 3, 3]);
        assert!(t.is_tree());
        assert_eq!(t.degree(3), 4);
        assert_eq!(all_trees(4).len(), 16);
        assert!(all_trees(5).iter().all(Graph::is_tree));
        assert_eq!(tree_from_prufer(&[]).edges(), &[(0, 1)]);
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gnp(9, 0.4, &mut seeded(7));
        let b = gnp(9, 0.4, &mut seeded(7));
        assert_eq!(a, b);
        let t = random_tree(50, &mut seeded(1));
        assert!(t.is_tree());
        let bip = random_bipartite(12, 0.5, &mut seeded(3));
        assert!(crate::graph::is_bipartite(&bip).is_some());
    }

    #[test]
    fn random_orientations_are_semi_proper() {
        let mut rng = seeded(11);
        for _ in 0..200 {
            let g = gnp(rng.random_range(1..9), 0.5, &mut rng);
            let wo = random_semi_proper(&g, 5, &mut rng);
            assert!(is_semi_proper(&g, &wo).unwrap());
            assert!(wo.weights().iter().all(|&w| (1..=5).contains(&w)));
        }
    }
}
