//! Depth-first search over edge directions and weights with incremental
//! in-sums and forbidden-value bookkeeping.
//!
//! Every vertex carries a [`Rule`]. A `Normal` vertex takes its in-sum as its
//! value; a `Pinned` vertex has a fixed value but an in-sum constrained
//! separately, which lets a piece of a larger graph be solved with its
//! boundary values chosen from outside. `Free` vertices stand for arbitrary
//! surroundings and are never compared.

use crate::graph::Graph;
use crate::orientation::{Direction, WeightedOrientation};

/// Values and in-sums are tracked as bit masks, so they must stay below this.
pub const VALUE_LIMIT: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Normal { allowed: u64 },
    Pinned { value: u32, inflow: u64 },
    Free,
}

impl Rule {
    pub fn up_to(k: u32) -> Rule {
        Rule::Normal { allowed: mask_up_to(k) }
    }
}

pub fn mask_up_to(k: u32) -> u64 {
    if k >= 63 {
        u64::MAX
    } else {
        (1u64 << (k + 1)) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderPolicy {
    /// Complete vertices as early as possible; fastest for decisions.
    Completion,
    /// Sorted edge order, so solutions come out lexicographically.
    Lexicographic,
}

/// Options per edge are `(direction, weight)` pairs in lexicographic order.
#[derive(Clone, Debug)]
pub struct Problem<'a> {
    pub graph: &'a Graph,
    pub rules: Vec<Rule>,
    pub options: Vec<Vec<(Direction, u32)>>,
}

impl<'a> Problem<'a> {
    pub fn new(graph: &'a Graph, k: u32, alphabet: &[u32]) -> Self {
        Problem { graph, rules: vec![Rule::up_to(k); graph.n()], options: vec![all_options(alphabet); graph.m()] }
    }
}

pub fn all_options(alphabet: &[u32]) -> Vec<(Direction, u32)> {
    let mut out = Vec::new();
    for d in [Direction::Forward, Direction::Reverse] {
        for &w in alphabet {
            out.push((d, w));
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Yielded,
    Done,
}

pub struct Engine<'a> {
    g: &'a Graph,
    rules: Vec<Rule>,
    options: Vec<Vec<(Direction, u32)>>,
    order: Vec<usize>,
    reach: Vec<u64>,
    inflow: Vec<u32>,
    remaining: Vec<u32>,
    forb_count: Vec<u16>,
    forb_mask: Vec<u64>,
    current: Vec<Option<(Direction, u32)>>,
    choice: Vec<usize>,
    completed: Vec<Vec<usize>>,
    depth: usize,
    state: State,
    nodes: u64,
}

impl<'a> Engine<'a> {
    /// Searches the edges in `edges`, which must be a union of connected
    /// components of the graph (every edge at a touched vertex included).
    pub fn new(problem: Problem<'a>, edges: &[usize], policy: OrderPolicy) -> Self {
        let g = problem.graph;
        let n = g.n();
        let order = match policy {
            OrderPolicy::Lexicographic => {
                let mut o = edges.to_vec();
                o.sort_unstable();
                o
            }
            OrderPolicy::Completion => completion_order(g, edges, &problem.rules),
        };
        let mut remaining = vec![0u32; n];
        for &e in &order {
            let (u, v) = g.edge(e);
            remaining[u] += 1;
            remaining[v] += 1;
        }
        let mut weights: Vec<u32> = problem.options.iter().flatten().map(|&(_, w)| w).collect();
        weights.sort_unstable();
        weights.dedup();
        let max_deg = remaining.iter().copied().max().unwrap_or(0) as usize;
        let mut reach = vec![1u64; max_deg + 1];
        for r in 1..=max_deg {
            let prev = reach[r - 1];
            let mut next = prev;
            for &w in &weights {
                if w < VALUE_LIMIT {
                    next |= prev << w;
                }
            }
            reach[r] = next;
        }
        let len = order.len();
        let mut engine = Engine {
            g,
            rules: problem.rules,
            options: problem.options,
            order,
            reach,
            inflow: vec![0; n],
            remaining,
            forb_count: vec![0; n * VALUE_LIMIT as usize],
            forb_mask: vec![0; n],
            current: vec![None; g.m()],
            choice: vec![0; len + 1],
            completed: vec![Vec::new(); len],
            depth: 0,
            state: State::Fresh,
            nodes: 0,
        };
        if !engine.initialise() {
            engine.state = State::Done;
        }
        engine
    }

    /// Number of edge assignments tried so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn touched(&self, v: usize) -> bool {
        self.remaining[v] > 0
    }

    fn initialise(&mut self) -> bool {
        let g = self.g;
        let mut in_scope = vec![false; g.m()];
        for &e in &self.order {
            in_scope[e] = true;
        }
        for v in 0..g.n() {
            if !self.touched(v) {
                continue;
            }
            if let Rule::Pinned { value, .. } = self.rules[v] {
                for &(u, e) in g.adj(v) {
                    if !in_scope[e] {
                        continue;
                    }
                    match self.rules[u] {
                        Rule::Pinned { value: other, .. } if other == value => return false,
                        Rule::Normal { .. } => {
                            if value >= VALUE_LIMIT {
                                continue;
                            }
                            self.add_forb(u, value);
                        }
                        _ => {}
                    }
                }
            }
        }
        (0..g.n()).filter(|&v| self.touched(v)).all(|v| self.possible(v))
    }

    fn add_forb(&mut self, v: usize, val: u32) {
        let i = v * VALUE_LIMIT as usize + val as usize;
        self.forb_count[i] += 1;
        self.forb_mask[v] |= 1 << val;
    }

    fn remove_forb(&mut self, v: usize, val: u32) {
        let i = v * VALUE_LIMIT as usize + val as usize;
        self.forb_count[i] -= 1;
        if self.forb_count[i] == 0 {
            self.forb_mask[v] &= !(1 << val);
        }
    }

    /// Can `v` still reach an admissible final in-sum?
    fn possible(&self, v: usize) -> bool {
        let cur = self.inflow[v];
        let target = match self.rules[v] {
            Rule::Free => return true,
            Rule::Normal { allowed } => allowed & !self.forb_mask[v],
            Rule::Pinned { inflow, .. } => inflow,
        };
        if cur >= VALUE_LIMIT {
            return false;
        }
        target & (self.reach[self.remaining[v] as usize] << cur) != 0
    }

    fn complete(&mut self, depth: usize, x: usize) -> bool {
        let val = self.inflow[x];
        match self.rules[x] {
            Rule::Free => true,
            Rule::Pinned { inflow, .. } => val < VALUE_LIMIT && inflow >> val & 1 == 1,
            Rule::Normal { allowed } => {
                if val >= VALUE_LIMIT || allowed >> val & 1 == 0 || self.forb_mask[x] >> val & 1 == 1 {
                    return false;
                }
                for i in 0..self.g.adj(x).len() {
                    let u = self.g.adj(x)[i].0;
                    if matches!(self.rules[u], Rule::Normal { .. }) {
                        self.add_forb(u, val);
                    }
                }
                self.completed[depth].push(x);
                true
            }
        }
    }

    fn apply(&mut self, depth: usize, e: usize, d: Direction, w: u32) -> bool {
        self.nodes += 1;
        let (t, h) = d.apply(self.g.edge(e));
        self.current[e] = Some((d, w));
        self.inflow[h] += w;
        self.remaining[t] -= 1;
        self.remaining[h] -= 1;
        self.completed[depth].clear();
        for x in [h, t] {
            if self.remaining[x] == 0 && !self.complete(depth, x) {
                return false;
            }
        }
        for x in [h, t] {
            if self.remaining[x] > 0 && !self.possible(x) {
                return false;
            }
        }
        for i in 0..self.completed[depth].len() {
            let x = self.completed[depth][i];
            for &(u, _) in self.g.adj(x) {
                if self.remaining[u] > 0 && !self.possible(u) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, depth: usize) {
        let e = self.order[depth];
        let Some((d, w)) = self.current[e].take() else { return };
        let done = std::mem::take(&mut self.completed[depth]);
        for &x in done.iter().rev() {
            let val = self.inflow[x];
            for i in 0..self.g.adj(x).len() {
                let u = self.g.adj(x)[i].0;
                if matches!(self.rules[u], Rule::Normal { .. }) {
                    self.remove_forb(u, val);
                }
            }
        }
        self.completed[depth] = done;
        self.completed[depth].clear();
        let (t, h) = d.apply(self.g.edge(e));
        self.inflow[h] -= w;
        self.remaining[t] += 1;
        self.remaining[h] += 1;
    }

    /// Directions and weights of the searched edges; unsearched edges are
    /// left forward with weight 1.
    fn snapshot(&self) -> WeightedOrientation {
        let mut wo = WeightedOrientation::uniform(self.g);
        for &e in &self.order {
            let (d, w) = self.current[e].expect("complete assignment");
            wo.set(e, d, w);
        }
        wo
    }

    pub fn next_solution(&mut self) -> Option<WeightedOrientation> {
        let len = self.order.len();
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.depth = 0;
                self.choice[0] = 0;
            }
            State::Yielded => {
                if len == 0 {
                    self.state = State::Done;
                    return None;
                }
                self.depth = len - 1;
                self.undo(self.depth);
                self.choice[self.depth] += 1;
            }
        }
        loop {
            if self.depth == len {
                self.state = State::Yielded;
                return Some(self.snapshot());
            }
            let depth = self.depth;
            let e = self.order[depth];
            if self.choice[depth] >= self.options[e].len() {
                if depth == 0 {
                    self.state = State::Done;
                    return None;
                }
                self.depth -= 1;
                self.undo(self.depth);
                self.choice[self.depth] += 1;
                continue;
            }
            let (d, w) = self.options[e][self.choice[depth]];
            if self.apply(depth, e, d, w) {
                self.depth += 1;
                self.choice[self.depth] = 0;
            } else {
                self.undo(depth);
                self.choice[depth] += 1;
            }
        }
    }

    /// In-sums of the touched vertices in the last yielded solution.
    pub fn inflow(&self) -> &[u32] {
        &self.inflow
    }
}

impl Iterator for Engine<'_> {
    type Item = WeightedOrientation;

    fn next(&mut self) -> Option<WeightedOrientation> {
        self.next_solution()
    }
}

/// Greedy order that places vertices one at a time (the one with most placed
/// neighbours first) and emits the edges back to already placed vertices, so
/// vertices become complete, and comparable, early.
fn completion_order(g: &Graph, edges: &[usize], rules: &[Rule]) -> Vec<usize> {
    let n = g.n();
    let mut in_scope = vec![false; g.m()];
    let mut deg = vec![0usize; n];
    for &e in edges {
        in_scope[e] = true;
        let (u, v) = g.edge(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut placed = vec![false; n];
    let mut placed_nbrs = vec![0usize; n];
    let mut order = Vec::with_capacity(edges.len());
    let candidates: Vec<usize> = (0..n).filter(|&v| deg[v] > 0).collect();
    for _ in 0..candidates.len() {
        let v = candidates
            .iter()
            .copied()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let pinned = matches!(rules[v], Rule::Pinned { .. });
                (placed_nbrs[v], pinned, deg[v], std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[v] = true;
        for &(u, e) in g.adj(v) {
            if !in_scope[e] {
                continue;
            }
            if placed[u] {
                order.push(e);
            }
            placed_nbrs[u] += 1;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::{is_semi_proper, max_s, s_profile};

    fn all_edges(g: &Graph) -> Vec<usize> {
        (0..g.m()).collect()
    }

    #[test]
    fn counts_match_small_cases() {
        let k2 = Graph::path(2);
        assert_eq!(Engine::new(Problem::new(&k2, 1, &[1]), &all_edges(&k2), OrderPolicy::Lexicographic).count(), 2);
        assert_eq!(Engine::new(Problem::new(&k2, 2, &[1, 2]), &all_edges(&k2), OrderPolicy::Lexicographic).count(), 4);
        let k3 = Graph::complete(3);
        assert_eq!(Engine::new(Problem::new(&k3, 2, &[1]), &all_edges(&k3), OrderPolicy::Completion).count(), 6);
    }

    #[test]
    fn lexicographic_policy_yields_sorted_solutions() {
        let g = Graph::cycle(5);
        let sols: Vec<_> = Engine::new(Problem::new(&g, 3, &[1, 2]), &all_edges(&g), OrderPolicy::Lexicographic).collect();
        assert!(!sols.is_empty());
        for pair in sols.windows(2) {
            assert!(pair[0].lex_key() < pair[1].lex_key());
        }
        for wo in &sols {
            assert!(is_semi_proper(&g, wo).unwrap());
            assert!(max_s(&g, wo).unwrap() <= 3);
        }
    }

    #[test]
    fn both_policies_find_the_same_set() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (0, 5)]).unwrap();
        let mut a: Vec<_> = Engine::new(Problem::new(&g, 3, &[1, 2]), &all_edges(&g), OrderPolicy::Completion)
            .map(|wo| wo.lex_key())
            .collect();
        let b: Vec<_> = Engine::new(Problem::new(&g, 3, &[1, 2]), &all_edges(&g), OrderPolicy::Lexicographic)
            .map(|wo| wo.lex_key())
            .collect();
        a.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn pinned_and_free_vertices() {
        // Path 0-1-2 with 0 free and 2 pinned to value 1 fed by nothing.
        let g = Graph::path(3);
        let mut p = Problem::new(&g, 2, &[1]);
        p.rules[0] = Rule::Free;
        p.rules[2] = Rule::Pinned { value: 1, inflow: 1 };
        let sols: Vec<_> = Engine::new(p, &all_edges(&g), OrderPolicy::Lexicographic).collect();
        for wo in &sols {
            let s = s_profile(&g, wo).unwrap();
            assert_eq!(s[2], 0);
            assert_ne!(s[1], 1);
        }
        // 2 -> 1 is forced, so 1 needs the arc from 0 as well to avoid the
        // pinned value.
        assert_eq!(sols.len(), 1);
    }
}
