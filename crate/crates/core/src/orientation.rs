//! Weighted orientations `(D, w)`, their in-sum profiles and the
//! semi-properness predicate.

use std::fmt::Write as _;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrientationError {
    #[error("orientation covers {found} edges but the graph has {expected}")]
    EdgeCount { expected: usize, found: usize },
    #[error("edge {0} has weight 0; weights must be positive")]
    ZeroWeight(usize),
    #[error("arc {tail}->{head} is not an edge of the graph")]
    NotAnEdge { tail: usize, head: usize },
    #[error("edge {{{0},{1}}} is oriented twice")]
    Repeated(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Direction of edge `{u, v}` with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `u -> v`, the head is the larger endpoint.
    Forward,
    /// `v -> u`.
    Reverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }

    /// `(tail, head)` of edge `(u, v)`.
    pub fn apply(self, (u, v): (usize, usize)) -> (usize, usize) {
        match self {
            Direction::Forward => (u, v),
            Direction::Reverse => (v, u),
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }
}

/// Per-edge direction and positive weight, indexed by the graph's edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedOrientation {
    dirs: Vec<Direction>,
    weights: Vec<u32>,
}

impl WeightedOrientation {
    pub fn new(dirs: Vec<Direction>, weights: Vec<u32>) -> Result<Self, OrientationError> {
        if dirs.len() != weights.len() {
            return Err(OrientationError::EdgeCount { expected: dirs.len(), found: weights.len() });
        }
        if let Some(e) = weights.iter().position(|&w| w == 0) {
            return Err(OrientationError::ZeroWeight(e));
        }
        Ok(WeightedOrientation { dirs, weights })
    }

    /// All edges forward with weight 1.
    pub fn uniform(g: &Graph) -> Self {
        WeightedOrientation { dirs: vec![Direction::Forward; g.m()], weights: vec![1; g.m()] }
    }

    /// Builds from `(tail, head, weight)` arcs, one per edge of `g` in any order.
    pub fn from_arcs(g: &Graph, arcs: &[(usize, usize, u32)]) -> Result<Self, OrientationError> {
        let mut dirs = vec![None; g.m()];
        let mut weights = vec![0; g.m()];
        for &(t, h, w) in arcs {
            let e = g.edge_id(t, h).ok_or(OrientationError::NotAnEdge { tail: t, head: h })?;
            if dirs[e].is_some() {
                let (u, v) = g.edge(e);
                return Err(OrientationError::Repeated(u, v));
            }
            dirs[e] = Some(if t < h { Direction::Forward } else { Direction::Reverse });
            weights[e] = w;
        }
        let found = dirs.iter().filter(|d| d.is_some()).count();
        if found != g.m() {
            return Err(OrientationError::EdgeCount { expected: g.m(), found });
        }
        WeightedOrientation::new(dirs.into_iter().map(Option::unwrap).collect(), weights)
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn dir(&self, e: usize) -> Direction {
        self.dirs[e]
    }

    pub fn weight(&self, e: usize) -> u32 {
        self.weights[e]
    }

    pub fn dirs(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn set(&mut self, e: usize, dir: Direction, weight: u32) {
        assert!(weight > 0, "weights must be positive");
        self.dirs[e] = dir;
        self.weights[e] = weight;
    }

    pub fn set_weight(&mut self, e: usize, weight: u32) {
        assert!(weight > 0, "weights must be positive");
        self.weights[e] = weight;
    }

    pub fn reverse(&mut self, e: usize) {
        self.dirs[e] = self.dirs[e].flip();
    }

    /// Every edge reversed, weights kept.
    pub fn reversed(&self) -> Self {
        WeightedOrientation { dirs: self.dirs.iter().map(|d| d.flip()).collect(), weights: self.weights.clone() }
    }

    pub fn tail_head(&self, g: &Graph, e: usize) -> (usize, usize) {
        self.dirs[e].apply(g.edge(e))
    }

    pub fn check_covers(&self, g: &Graph) -> Result<(), OrientationError> {
        if self.len() != g.m() {
            return Err(OrientationError::EdgeCount { expected: g.m(), found: self.len() });
        }
        Ok(())
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Lexicographic key: `(direction bit, weight)` per edge in edge order.
    pub fn lex_key(&self) -> Vec<(u8, u32)> {
        self.dirs.iter().zip(&self.weights).map(|(d, &w)| (d.bit(), w)).collect()
    }

    /// Places `part` (an orientation of a subgraph) into this one through an
    /// edge id map from the part's edges to ours.
    pub fn overlay(&mut self, part: &WeightedOrientation, edge_map: &[usize]) {
        for (local, &e) in edge_map.iter().enumerate() {
            self.dirs[e] = part.dirs[local];
            self.weights[e] = part.weights[local];
        }
    }
}

/// In-sums `s[v]`, the sum of weights of arcs with head `v`.
pub type SProfile = Vec<u64>;

pub fn s_profile(g: &Graph, wo: &WeightedOrientation) -> Result<SProfile, OrientationError> {
    wo.check_covers(g)?;
    let mut s = vec![0u64; g.n()];
    for e in 0..g.m() {
        let (_, h) = wo.tail_head(g, e);
        s[h] += u64::from(wo.weight(e));
    }
    Ok(s)
}

/// First edge (in sorted order) whose endpoints have equal in-sums.
pub fn first_violation(g: &Graph, wo: &WeightedOrientation) -> Result<Option<(usize, usize)>, OrientationError> {
    let s = s_profile(g, wo)?;
    Ok(g.edges().iter().copied().find(|&(u, v)| s[u] == s[v]))
}

pub fn is_semi_proper(g: &Graph, wo: &WeightedOrientation) -> Result<bool, OrientationError> {
    Ok(first_violation(g, wo)?.is_none())
}

pub fn max_s(g: &Graph, wo: &WeightedOrientation) -> Result<u64, OrientationError> {
    Ok(s_profile(g, wo)?.into_iter().max().unwrap_or(0))
}

/// `a <tail> <head> <weight>` per edge, in edge order.
pub fn serialize_orientation(g: &Graph, wo: &WeightedOrientation) -> String {
    let mut out = String::new();
    for e in 0..g.m() {
        let (t, h) = wo.tail_head(g, e);
        let _ = writeln!(out, "a {t} {h} {}", wo.weight(e));
    }
    out
}

pub fn parse_orientation(g: &Graph, text: &str) -> Result<WeightedOrientation, OrientationError> {
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let err = |message: &str| OrientationError::Parse { line, message: message.to_string() };
        if toks.len() != 4 || toks[0] != "a" {
            return Err(err("expected `a <tail> <head> <weight>`"));
        }
        let t: usize = toks[1].parse().map_err(|_| err("bad tail"))?;
        let h: usize = toks[2].parse().map_err(|_| err("bad head"))?;
        let w: u32 = toks[3].parse().map_err(|_| err("bad weight"))?;
        if w == 0 {
            return Err(err("weight must be positive"));
        }
        arcs.push((t, h, w));
    }
    WeightedOrientation::from_arcs(g, &arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arcs(g: &Graph, a: &[(usize, usize, u32)]) -> WeightedOrientation {
        WeightedOrientation::from_arcs(g, a).unwrap()
    }

    #[test]
    fn profile_examples() {
        let k2 = Graph::path(2);
        assert_eq!(s_profile(&k2, &arcs(&k2, &[(0, 1, 3)])).unwrap(), vec![0, 3]);
        let p3 = Graph::path(3);
        assert_eq!(s_profile(&p3, &arcs(&p3, &[(1, 0, 1), (1, 2, 1)])).unwrap(), vec![1, 0, 1]);
        let k3 = Graph::complete(3);
        let wo = arcs(&k3, &[(0, 1, 1), (1, 2, 2), (0, 2, 1)]);
        let s = s_profile(&k3, &wo).unwrap();
        assert_eq!(s, vec![0, 1, 3]);
        assert_eq!(s.iter().sum::<u64>(), 4);
    }

    #[test]
    fn semi_proper_examples() {
        let k2 = Graph::path(2);
        assert!(is_semi_proper(&k2, &arcs(&k2, &[(0, 1, 1)])).unwrap());
        let p3 = Graph::path(3);
        let wo = arcs(&p3, &[(0, 1, 1), (2, 1, 1)]);
        assert_eq!(s_profile(&p3, &wo).unwrap(), vec![0, 2, 0]);
        assert!(is_semi_proper(&p3, &wo).unwrap());
        let c4 = Graph::cycle(4);
        let wo = arcs(&c4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        assert_eq!(first_violation(&c4, &wo).unwrap(), Some((0, 1)));
    }

    #[test]
    fn max_s_examples() {
        let k2 = Graph::path(2);
        assert_eq!(max_s(&k2, &arcs(&k2, &[(0, 1, 1)])).unwrap(), 1);
        assert_eq!(max_s(&k2, &arcs(&k2, &[(0, 1, 7)])).unwrap(), 7);
    }

    #[test]
    fn structural_errors() {
        let k3 = Graph::complete(3);
        let short = WeightedOrientation::new(vec![Direction::Forward], vec![1]).unwrap();
        assert!(matches!(s_profile(&k3, &short), Err(OrientationError::EdgeCount { .. })));
        assert!(WeightedOrientation::new(vec![Direction::Forward], vec![0]).is_err());
        assert!(matches!(
            WeightedOrientation::from_arcs(&k3, &[(0, 1, 1), (1, 0, 1), (1, 2, 1)]),
            Err(OrientationError::Repeated(0, 1))
        ));
        assert!(parse_orientation(&k3, "a 0 1 1\na 1 2 1").is_err());
    }

    #[test]
    fn text_round_trip() {
        let k3 = Graph::complete(3);
        let wo = arcs(&k3, &[(1, 0, 2), (2, 1, 1), (0, 2, 5)]);
        let text = serialize_orientation(&k3, &wo);
        assert_eq!(text, "a 1 0 2\na 0 2 5\na 2 1 1\n");
        assert_eq!(parse_orientation(&k3, &text).unwrap(), wo);
    }

    fn graph_and_orientation() -> impl Strategy<Value = (Graph, WeightedOrientation)> {
        (2usize..9)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let len = pairs.len();
                (Just(n), Just(pairs), proptest::collection::vec((any::<bool>(), any::<bool>(), 1u32..6), len))
            })
            .prop_map(|(n, pairs, picks)| {
                let chosen: Vec<_> = pairs.iter().zip(&picks).filter(|(_, p)| p.0).map(|(&e, p)| (e, p.1, p.2)).collect();
                let g = Graph::new(n, chosen.iter().map(|c| c.0)).unwrap();
                let arcs: Vec<_> = chosen.iter().map(|&((u, v), fwd, w)| if fwd { (u, v, w) } else { (v, u, w) }).collect();
                let wo = WeightedOrientation::from_arcs(&g, &arcs).unwrap();
                (g, wo)
            })
    }

    proptest! {
        #[test]
        fn conservation((g, wo) in graph_and_orientation()) {
            let s = s_profile(&g, &wo).unwrap();
            let total: u64 = wo.weights().iter().map(|&w| u64::from(w)).sum();
            prop_assert_eq!(s.iter().sum::<u64>(), total);
        }

        #[test]
        fn reversal_gives_out_sums((g, wo) in graph_and_orientation()) {
            let rev = s_profile(&g, &wo.reversed()).unwrap();
            let mut out = vec![0u64; g.n()];
            for e in 0..g.m() {
                let (t, _) = wo.tail_head(&g, e);
                out[t] += u64::from(wo.weight(e));
            }
            prop_assert_eq!(&rev, &out);
            prop_assert_eq!(rev.iter().sum::<u64>(), s_profile(&g, &wo).unwrap().iter().sum::<u64>());
        }

        #[test]
        fn weight_bump_moves_one_sum((g, wo) in graph_and_orientation(), delta in 1u32..4, pick in any::<prop::sample::Index>()) {
            prop_assume!(g.m() > 0);
            let e = pick.index(g.m());
            let mut bumped = wo.clone();
            bumped.set_weight(e, wo.weight(e) + delta);
            let before = s_profile(&g, &wo).unwrap();
            let after = s_profile(&g, &bumped).unwrap();
            let (_, h) = wo.tail_head(&g, e);
            for v in 0..g.n() {
                let expect = before[v] + if v == h { u64::from(delta) } else { 0 };
                prop_assert_eq!(after[v], expect);
            }
        }

        #[test]
        fn unit_weights_give_indegrees((g, wo) in graph_and_orientation()) {
            let unit = WeightedOrientation::new(wo.dirs().to_vec(), vec![1; g.m()]).unwrap();
            let s = s_profile(&g, &unit).unwrap();
            for (v, &sv) in s.iter().enumerate() {
                let indeg = (0..g.m()).filter(|&e| unit.tail_head(&g, e).1 == v).count() as u64;
                prop_assert_eq!(sv, indeg);
            }
        }

        #[test]
        fn orientation_text_round_trips((g, wo) in graph_and_orientation()) {
            prop_assert_eq!(parse_orientation(&g, &serialize_orientation(&g, &wo)).unwrap(), wo);
        }
    }
}
