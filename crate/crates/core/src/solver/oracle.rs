//! Brute-force minimum over every direction assignment and every weight
//! function into `1..=W`. Deliberately shares nothing with the search engine
//! beyond the orientation predicates, so the two can check each other.

use crate::graph::Graph;
use crate::orientation::{is_semi_proper, Direction, WeightedOrientation};

use super::{Limits, SolveError};

pub fn oracle_min_max(g: &Graph, max_weight: u32) -> Result<u32, SolveError> {
    oracle_min_max_with(g, max_weight, &Limits::from_env())
}

pub fn oracle_min_max_with(g: &Graph, max_weight: u32, limits: &Limits) -> Result<u32, SolveError> {
    if max_weight == 0 {
        return Err(SolveError::Alphabet("maximum weight must be at least 1".into()));
    }
    if g.m() > limits.oracle_max_edges {
        return Err(SolveError::SizeCap { edges: g.m(), cap: limits.oracle_max_edges });
    }
    // last edge id touching each vertex: after it, the vertex's sum is final
    let mut last = vec![None; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        last[u] = Some(e);
        last[v] = Some(e);
    }
    for k in 0..=g.max_degree() as u64 {
        let mut walk = Walk {
            g,
            k,
            max_weight,
            last: &last,
            dirs: vec![Direction::Forward; g.m()],
            weights: vec![1; g.m()],
            sums: vec![0; g.n()],
        };
        if walk.exists(0) {
            return Ok(k as u32);
        }
    }
    Err(SolveError::Internal("no orientation within the maximum degree".into()))
}

struct Walk<'a> {
    g: &'a Graph,
    k: u64,
    max_weight: u32,
    last: &'a [Option<usize>],
    dirs: Vec<Direction>,
    weights: Vec<u32>,
    sums: Vec<u64>,
}

impl Walk<'_> {
    fn closed(&self, v: usize, upto: usize) -> bool {
        self.last[v].is_none_or(|l| l <= upto)
    }

    /// Sums of finished vertices at the ends of edge `e` must differ from
    /// every finished neighbour.
    fn consistent_after(&self, e: usize) -> bool {
        let (u, v) = self.g.edge(e);
        [u, v].into_iter().filter(|&x| self.closed(x, e)).all(|x| {
            self.g.neighbors(x).filter(|&y| self.closed(y, e)).all(|y| self.sums[x] != self.sums[y])
        })
    }

    fn exists(&mut self, e: usize) -> bool {
        if e == self.g.m() {
            let wo = WeightedOrientation::new(self.dirs.clone(), self.weights.clone()).expect("positive weights");
            return is_semi_proper(self.g, &wo).expect("orientation covers the graph");
        }
        let (u, v) = self.g.edge(e);
        for (dir, head) in [(Direction::Forward, v), (Direction::Reverse, u)] {
            for w in 1..=self.max_weight {
                self.sums[head] += u64::from(w);
                if self.sums[head] <= self.k {
                    self.dirs[e] = dir;
                    self.weights[e] = w;
                    if self.consistent_after(e) && self.exists(e + 1) {
                        self.sums[head] -= u64::from(w);
                        return true;
                    }
                }
                self.sums[head] -= u64::from(w);
            }
        }
        false
    }
}
