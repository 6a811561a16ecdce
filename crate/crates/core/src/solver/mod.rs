//! Exact decision and optimisation of the semi-proper orientation number
//! `χ⃗ₛ` and the proper orientation number `χ⃗`, plus a brute-force oracle.

pub mod compose;
pub mod engine;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use crate::graph::{chromatic_number_capped, Graph, DEFAULT_CHROMATIC_CAP};
use crate::orientation::{is_semi_proper, max_s, WeightedOrientation};
use engine::{Engine, OrderPolicy, Problem, Rule, VALUE_LIMIT};

pub use oracle::{oracle_min_max, oracle_min_max_with};

/// Environment variable overriding both edge caps.
pub const MAX_EDGES_ENV: &str = "ORIENT_MAX_EDGES";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("graph has {edges} edges, above the search cap of {cap} (raise it with {MAX_EDGES_ENV})")]
    SizeCap { edges: usize, cap: usize },
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("in-sums up to {0} exceed the supported range of values below {VALUE_LIMIT}")]
    ValueRange(u64),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

/// Search caps. Defaults: 40 edges for the branch-and-bound, 10 edges for
/// the oracle, 24 vertices for the exact chromatic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_edges: usize,
    pub oracle_max_edges: usize,
    pub chromatic_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_edges: 40, oracle_max_edges: 10, chromatic_cap: DEFAULT_CHROMATIC_CAP }
    }
}

impl Limits {
    /// Defaults, with both edge caps replaced by `ORIENT_MAX_EDGES` if set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(MAX_EDGES_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.max_edges = cap;
            limits.oracle_max_edges = cap;
        }
        limits
    }

    pub fn unbounded() -> Self {
        Limits { max_edges: usize::MAX, oracle_max_edges: usize::MAX, chromatic_cap: DEFAULT_CHROMATIC_CAP }
    }

    fn check(&self, g: &Graph) -> Result<(), SolveError> {
        if g.m() > self.max_edges {
            return Err(SolveError::SizeCap { edges: g.m(), cap: self.max_edges });
        }
        Ok(())
    }
}

/// A set of allowed edge weights; must contain 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<u32>);

impl Alphabet {
    pub fn new(weights: impl IntoIterator<Item = u32>) -> Result<Self, SolveError> {
        let mut w: Vec<u32> = weights.into_iter().collect();
        w.sort_unstable();
        w.dedup();
        if w.is_empty() {
            return Err(SolveError::Alphabet("empty".into()));
        }
        if w[0] == 0 {
            return Err(SolveError::Alphabet("weights must be positive".into()));
        }
        if w[0] != 1 {
            return Err(SolveError::Alphabet(format!("{w:?} does not contain 1")));
        }
        Ok(Alphabet(w))
    }

    pub fn unit() -> Self {
        Alphabet(vec![1])
    }

    pub fn one_two() -> Self {
        Alphabet(vec![1, 2])
    }

    pub fn up_to(w: u32) -> Result<Self, SolveError> {
        Alphabet::new(1..=w)
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn max(&self) -> u32 {
        *self.0.last().expect("alphabet is nonempty")
    }
}

impl FromStr for Alphabet {
    type Err = SolveError;

    /// Accepts `1`, `1,2` or `1..W`.
    fn from_str(s: &str) -> Result<Self, SolveError> {
        let bad = || SolveError::Alphabet(format!("cannot parse {s:?}"));
        if let Some((lo, hi)) = s.split_once("..") {
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            return Alphabet::new(lo..=hi);
        }
        let parts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse()).collect();
        Alphabet::new(parts.map_err(|_| bad())?)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An optimum value with a witness attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub value: u32,
    pub witness: WeightedOrientation,
}

/// Caps `k` at the largest in-sum any orientation can produce, then checks
/// the masks can represent it.
fn effective_k(g: &Graph, k: u32, alphabet: &Alphabet) -> Result<u32, SolveError> {
    let ceiling = g.max_degree() as u64 * u64::from(alphabet.max());
    let k = u64::from(k).min(ceiling);
    if k >= u64::from(VALUE_LIMIT) {
        return Err(SolveError::ValueRange(k));
    }
    Ok(k as u32)
}

/// Edge ids of each connected component that has edges.
fn component_edges(g: &Graph) -> Vec<Vec<usize>> {
    g.components()
        .into_iter()
        .map(|comp| {
            let mut es: Vec<usize> = comp.iter().flat_map(|&v| g.adj(v).iter().map(|&(_, e)| e)).collect();
            es.sort_unstable();
            es.dedup();
            es
        })
        .filter(|es| !es.is_empty())
        .collect()
}

/// Solves each component separately under `rules`/`options`; `None` if any
/// component is infeasible.
pub(crate) fn solve_problem(problem: &Problem<'_>) -> Option<WeightedOrientation> {
    let g = problem.graph;
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            let ok = match problem.rules[v] {
                Rule::Normal { allowed } => allowed & 1 == 1,
                Rule::Pinned { inflow, .. } => inflow & 1 == 1,
                Rule::Free => true,
            };
            if !ok {
                return None;
            }
        }
    }
    let mut wo = WeightedOrientation::uniform(g);
    for edges in component_edges(g) {
        let part = Engine::new(problem.clone(), &edges, OrderPolicy::Completion).next_solution()?;
        for &e in &edges {
            wo.set(e, part.dir(e), part.weight(e));
        }
    }
    Some(wo)
}

/// Some semi-proper orientation with weights from `alphabet` and maximum
/// in-sum at most `k`, or `None` if there is none.
pub fn decide(g: &Graph, k: u32, alphabet: &Alphabet) -> Result<Option<WeightedOrientation>, SolveError> {
    decide_with(g, k, alphabet, &Limits::from_env())
}

pub fn decide_with(
    g: &Graph,
    k: u32,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Option<WeightedOrientation>, SolveError> {
    limits.check(g)?;
    let k = effective_k(g, k, alphabet)?;
    let found = solve_problem(&Problem::new(g, k, alphabet.weights()));
    if let Some(wo) = &found {
        let ok = is_semi_proper(g, wo).unwrap_or(false) && max_s(g, wo).unwrap_or(u64::MAX) <= u64::from(k);
        if !ok {
            return Err(SolveError::Internal("search returned an invalid witness".into()));
        }
    }
    Ok(found)
}

/// `χ(G) - 1` when the chromatic number is within its cap, else 0.
pub fn chromatic_lower_bound(g: &Graph, limits: &Limits) -> u32 {
    match chromatic_number_capped(g, limits.chromatic_cap) {
        Ok(chi) => chi.saturating_sub(1) as u32,
        Err(_) => 0,
    }
}

fn minimise(g: &Graph, alphabet: &Alphabet, limits: &Limits) -> Result<Solution, SolveError> {
    limits.check(g)?;
    let start = chromatic_lower_bound(g, limits);
    let top = g.max_degree() as u32;
    for k in start..=top.max(start) {
        if let Some(witness) = decide_with(g, k, alphabet, limits)? {
            return Ok(Solution { value: k, witness });
        }
    }
    Err(SolveError::Internal(format!("no orientation with maximum in-sum at most the maximum degree {top}")))
}

/// `χ⃗ₛ(G)`: the least `k` with a semi-proper orientation over weights
/// `{1, 2}` of maximum in-sum `k`.
pub fn semi_proper_number(g: &Graph) -> Result<Solution, SolveError> {
    semi_proper_number_with(g, &Limits::from_env())
}

pub fn semi_proper_number_with(g: &Graph, limits: &Limits) -> Result<Solution, SolveError> {
    minimise(g, &Alphabet::one_two(), limits)
}

/// `χ⃗(G)`: as [`semi_proper_number`] with every weight 1.
pub fn proper_orientation_number(g: &Graph) -> Result<Solution, SolveError> {
    proper_orientation_number_with(g, &Limits::from_env())
}

pub fn proper_orientation_number_with(g: &Graph, limits: &Limits) -> Result<Solution, SolveError> {
    minimise(g, &Alphabet::unit(), limits)
}

/// Every semi-proper orientation with weights from `alphabet` and maximum
/// in-sum at most `k`, once each, in lexicographic order of
/// `(direction bit, weight)` per edge in edge order.
pub fn enumerate_optimal<'a>(
    g: &'a Graph,
    k: u32,
    alphabet: &Alphabet,
) -> Result<impl Iterator<Item = WeightedOrientation> + 'a, SolveError> {
    enumerate_optimal_with(g, k, alphabet, &Limits::from_env())
}

pub fn enumerate_optimal_with<'a>(
    g: &'a Graph,
    k: u32,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<impl Iterator<Item = WeightedOrientation> + 'a, SolveError> {
    limits.check(g)?;
    let k = effective_k(g, k, alphabet)?;
    let edges: Vec<usize> = (0..g.m()).collect();
    Ok(Engine::new(Problem::new(g, k, alphabet.weights()), &edges, OrderPolicy::Lexicographic))
}

/// The four quantities of the bound chain `χ - 1 <= χ⃗ₛ <= χ⃗ <= Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundChain {
    pub chromatic: Option<u32>,
    pub semi_proper: u32,
    pub proper: u32,
    pub max_degree: u32,
}

impl BoundChain {
    pub fn holds(&self) -> bool {
        let lower = self.chromatic.is_none_or(|chi| chi.saturating_sub(1) <= self.semi_proper);
        lower && self.semi_proper <= self.proper && self.proper <= self.max_degree
    }
}

pub fn bound_chain(g: &Graph, limits: &Limits) -> Result<BoundChain, SolveError> {
    Ok(BoundChain {
        chromatic: chromatic_number_capped(g, limits.chromatic_cap).ok().map(|c| c as u32),
        semi_proper: semi_proper_number_with(g, limits)?.value,
        proper: proper_orientation_number_with(g, limits)?.value,
        max_degree: g.max_degree() as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::s_profile;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn decide_examples() {
        let k3 = Graph::complete(3);
        assert!(decide_with(&k3, 1, &Alphabet::one_two(), &lim()).unwrap().is_none());
        let wo = decide_with(&k3, 2, &Alphabet::one_two(), &lim()).unwrap().unwrap();
        let mut s = s_profile(&k3, &wo).unwrap();
        s.sort_unstable();
        assert_eq!(s, vec![0, 1, 2]);
        let single = Graph::empty(1);
        assert!(decide_with(&single, 0, &Alphabet::unit(), &lim()).unwrap().unwrap().is_empty());
    }

    #[test]
    fn zero_is_feasible_only_without_edges() {
        assert!(decide_with(&Graph::empty(4), 0, &Alphabet::one_two(), &lim()).unwrap().is_some());
        assert!(decide_with(&Graph::path(2), 0, &Alphabet::one_two(), &lim()).unwrap().is_none());
    }

    #[test]
    fn numbers_on_small_graphs() {
        assert_eq!(semi_proper_number_with(&Graph::path(2), &lim()).unwrap().value, 1);
        assert_eq!(semi_proper_number_with(&Graph::path(4), &lim()).unwrap().value, 2);
        assert_eq!(proper_orientation_number_with(&Graph::path(2), &lim()).unwrap().value, 1);
        assert_eq!(proper_orientation_number_with(&Graph::complete(3), &lim()).unwrap().value, 2);
        assert_eq!(proper_orientation_number_with(&Graph::cycle(4), &lim()).unwrap().value, 2);
        assert_eq!(semi_proper_number_with(&Graph::empty(3), &lim()).unwrap().value, 0);
    }

    #[test]
    fn witness_attains_value() {
        for g in [Graph::complete(4), Graph::cycle(5), Graph::complete_bipartite(2, 3)] {
            let sol = semi_proper_number_with(&g, &lim()).unwrap();
            assert!(is_semi_proper(&g, &sol.witness).unwrap());
            assert_eq!(max_s(&g, &sol.witness).unwrap(), u64::from(sol.value));
        }
    }

    #[test]
    fn enumeration_counts() {
        let k2 = Graph::path(2);
        assert_eq!(enumerate_optimal_with(&k2, 1, &Alphabet::unit(), &lim()).unwrap().count(), 2);
        assert_eq!(enumerate_optimal_with(&k2, 2, &Alphabet::one_two(), &lim()).unwrap().count(), 4);
        let k3 = Graph::complete(3);
        assert_eq!(enumerate_optimal_with(&k3, 2, &Alphabet::unit(), &lim()).unwrap().count(), 6);
    }

    #[test]
    fn caps_and_alphabets() {
        let big = Graph::complete(10);
        assert!(matches!(decide_with(&big, 3, &Alphabet::unit(), &lim()), Err(SolveError::SizeCap { .. })));
        assert!(Alphabet::new([2, 3]).is_err());
        assert!(Alphabet::new([]).is_err());
        assert_eq!("1..3".parse::<Alphabet>().unwrap().weights(), &[1, 2, 3]);
        assert_eq!("1,2".parse::<Alphabet>().unwrap(), Alphabet::one_two());
        assert_eq!("1".parse::<Alphabet>().unwrap().to_string(), "1");
    }

    /// Plain enumeration over all orientations and weights, used as an
    /// independent count for the search.
    fn brute_count(g: &Graph, k: u32, alphabet: &[u32]) -> usize {
        let per_edge = 2 * alphabet.len();
        let total = per_edge.pow(g.m() as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut s = vec![0u32; g.n()];
                for &(u, v) in g.edges() {
                    let pick = c % per_edge;
                    c /= per_edge;
                    let head = if pick < alphabet.len() { v } else { u };
                    s[head] += alphabet[pick % alphabet.len()];
                }
                s.iter().all(|&x| x <= k) && g.edges().iter().all(|&(u, v)| s[u] != s[v])
            })
            .count()
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (1usize..7).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
                let chosen = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).take(7);
                Graph::new(n, chosen).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn enumeration_matches_brute_force(g in small_graph(), k in 0u32..5) {
            let got = enumerate_optimal_with(&g, k, &Alphabet::one_two(), &lim()).unwrap().count();
            prop_assert_eq!(got, brute_count(&g, k, &[1, 2]));
        }

        #[test]
        fn decide_is_monotone_in_k_and_alphabet(g in small_graph(), k in 0u32..4) {
            let unit_k = decide_with(&g, k, &Alphabet::unit(), &lim()).unwrap().is_some();
            let both_k = decide_with(&g, k, &Alphabet::one_two(), &lim()).unwrap().is_some();
            let both_k1 = decide_with(&g, k + 1, &Alphabet::one_two(), &lim()).unwrap().is_some();
            prop_assert!(!unit_k || both_k);
            prop_assert!(!both_k || both_k1);
        }

        #[test]
        fn bound_chain_on_random_graphs(g in small_graph()) {
            let chain = bound_chain(&g, &lim()).unwrap();
            prop_assert!(chain.holds(), "{:?}", chain);
        }

        #[test]
        fn weights_one_and_two_suffice(g in small_graph()) {
            let mut limits = lim();
            limits.oracle_max_edges = 7;
            let best = semi_proper_number_with(&g, &limits).unwrap().value;
            prop_assert_eq!(oracle_min_max_with(&g, 2, &limits).unwrap(), best);
            prop_assert_eq!(oracle_min_max_with(&g, 3, &limits).unwrap(), best);
        }
    }
}
