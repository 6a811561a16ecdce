//! Fixtures shared by the benchmarks.

use orient_core::generate::{gnp, random_semi_proper, random_tree, seeded};
use orient_core::{Graph, WeightedOrientation};

/// Petersen graph: cubic, 10 vertices, 15 edges.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).expect("simple")
}

/// Named graphs for the exact solvers, smallest first.
pub fn solver_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("k4", Graph::complete(4)),
        ("c9", Graph::cycle(9)),
        ("k3_3", Graph::complete_bipartite(3, 3)),
        ("petersen", petersen()),
        ("gnp12", gnp(12, 0.3, &mut seeded(3))),
    ]
}

pub fn tree(n: usize) -> Graph {
    random_tree(n, &mut seeded(n as u64))
}

/// A graph with a semi-proper orientation using weights up to 5.
pub fn heavy_orientation(seed: u64) -> (Graph, WeightedOrientation) {
    let mut rng = seeded(seed);
    let g = gnp(9, 0.35, &mut rng);
    let wo = random_semi_proper(&g, 5, &mut rng);
    (g, wo)
}
